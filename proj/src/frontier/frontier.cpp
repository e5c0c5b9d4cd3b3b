#include "blockrecon/frontier/frontier.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <unordered_set>

#include "blockrecon/common/random.hpp"

namespace blockrecon::frontier {

namespace {

FrontierEntry entry_of(const iblt::KeyValue& kv)
{
    FrontierEntry e;
    std::copy(kv.key.begin(), kv.key.end(), e.head_hash.begin());
    std::copy(kv.value.begin(), kv.value.end(), e.account.begin());
    return e;
}

Hash32 random_hash(Rng& rng)
{
    Hash32 h;
    fill_random(rng, h);
    return h;
}

} // namespace

void FrontierSnapshot::validate() const
{
    std::unordered_set<Hash32, Hash32Hasher> accounts;
    std::unordered_set<Hash32, Hash32Hasher> heads;
    for (const auto& e : entries) {
        if (!accounts.insert(e.account).second) throw InvalidArgument("snapshot lists an account twice");
        if (!heads.insert(e.head_hash).second) throw InvalidArgument("snapshot lists a head hash twice");
    }
}

iblt::Iblt frontier_table(const FrontierSnapshot& snap, std::uint32_t cells, std::uint64_t seed, std::uint8_t k)
{
    iblt::Iblt t(iblt::IbltParams{cells, k, 32, 32, seed});
    for (const auto& e : snap.entries) t.insert(e.head_hash, e.account);
    return t;
}

Bytes frontier_delta_encode(const FrontierSnapshot& snap, std::uint64_t expected_delta, std::uint64_t seed,
                            double multiplier, std::uint8_t k)
{
    return frontier_table(snap, iblt::iblt_sizing(2 * expected_delta, k, multiplier), seed, k).serialize();
}

ReconcileOutcome frontier_reconcile(const FrontierSnapshot& mine, ByteView theirs)
{
    const auto peer = iblt::Iblt::deserialize(theirs);
    const auto& p = peer.params();
    if (p.key_width != 32 || p.value_width != 32) throw ParameterMismatch("peer table is not a frontier table");
    const auto local = frontier_table(mine, p.cell_count, p.seed, p.k);
    const auto diff = peer.subtract(local).decode();

    ReconcileOutcome out;
    out.complete = diff.complete;
    for (const auto& kv : diff.only_in_a) out.changed_heads.push_back(entry_of(kv));
    for (const auto& kv : diff.only_in_b) out.my_stale.push_back(entry_of(kv));
    std::sort(out.changed_heads.begin(), out.changed_heads.end());
    std::sort(out.my_stale.begin(), out.my_stale.end());
    return out;
}

ReconcileOutcome snapshot_difference(const FrontierSnapshot& mine, const FrontierSnapshot& theirs)
{
    auto a = mine.entries;
    auto b = theirs.entries;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ReconcileOutcome out;
    out.complete = true;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(out.changed_heads));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.my_stale));
    return out;
}

void write_snapshot(std::ostream& out, const FrontierSnapshot& snap)
{
    for (const auto& e : snap.entries) {
        out.write(reinterpret_cast<const char*>(e.head_hash.data()), 32);
        out.write(reinterpret_cast<const char*>(e.account.data()), 32);
    }
}

FrontierSnapshot read_snapshot(std::istream& in)
{
    FrontierSnapshot snap;
    std::array<char, 64> rec;
    while (in.read(rec.data(), rec.size())) {
        FrontierEntry e;
        std::copy(rec.begin(), rec.begin() + 32, e.head_hash.begin());
        std::copy(rec.begin() + 32, rec.end(), e.account.begin());
        snap.entries.push_back(e);
    }
    if (in.gcount() != 0) throw MalformedMessage("snapshot stream ends inside a record");
    return snap;
}

std::vector<FrontierInterval> frontier_sim(const FrontierSimConfig& cfg)
{
    if (cfg.mean_changes < 0.0) throw InvalidArgument("mean changes must be non-negative");
    Rng rng = make_rng(cfg.seed, 0);
    FrontierSnapshot current;
    current.entries.reserve(cfg.accounts);
    for (std::uint64_t i = 0; i < cfg.accounts; ++i) current.entries.push_back({random_hash(rng), random_hash(rng)});

    std::poisson_distribution<std::uint64_t> changes_dist(cfg.mean_changes);
    std::uint64_t previous = static_cast<std::uint64_t>(std::ceil(cfg.mean_changes));
    std::vector<FrontierInterval> out;
    for (std::uint32_t iv = 0; iv < cfg.intervals; ++iv) {
        FrontierInterval row;
        row.interval = iv;
        row.full_bytes = kFullDumpEntryBytes * cfg.accounts;

        FrontierSnapshot next = current;
        next.timestamp = current.timestamp + cfg.interval_seconds;
        row.changes = cfg.mean_changes > 0.0 ? std::min<std::uint64_t>(changes_dist(rng), cfg.accounts) : 0;
        // Partial Fisher-Yates over account positions picks distinct accounts to advance.
        std::vector<std::uint64_t> pick;
        std::unordered_set<std::uint64_t> chosen;
        while (pick.size() < row.changes) {
            const std::uint64_t idx = uniform_int(rng, 0, cfg.accounts - 1);
            if (chosen.insert(idx).second) pick.push_back(idx);
        }
        for (std::uint64_t idx : pick) next.entries[idx].head_hash = random_hash(rng);

        row.expected_delta = cfg.sizing == DeltaSizing::Exact ? row.changes : 2 * previous;
        const std::uint64_t table_seed = rng();
        const auto oracle = snapshot_difference(current, next);

        auto attempt = [&](std::uint32_t cells) {
            const auto t0 = std::chrono::steady_clock::now();
            const Bytes wire = frontier_table(next, cells, table_seed).serialize();
            row.build_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            row.iblt_bytes += wire.size();
            const auto got = frontier_reconcile(current, wire);
            return got.complete && got.changed_heads == oracle.changed_heads && got.my_stale == oracle.my_stale;
        };
        row.cells = iblt::iblt_sizing(2 * row.expected_delta);
        row.recovered = attempt(row.cells);
        if (!row.recovered && cfg.retry) {
            row.retried = true;
            row.recovered = attempt(2 * row.cells);
        }

        previous = row.changes;
        current = std::move(next);
        out.push_back(row);
    }
    return out;
}

} // namespace blockrecon::frontier
