#include "blockrecon/simnet/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "blockrecon/common/random.hpp"
#include "blockrecon/filters/bloom.hpp"

namespace blockrecon::simnet {

namespace {

Hash32 random_hash(Rng& rng)
{
    Hash32 h;
    fill_random(rng, h);
    return h;
}

std::uint64_t overlap_key(double overlap) { return static_cast<std::uint64_t>(std::llround(overlap * 1e6)); }

} // namespace

Scenario gen_scenario(const ScenarioConfig& cfg, std::uint64_t stream)
{
    if (cfg.overlap < 0.0 || cfg.overlap > 1.0) throw InvalidArgument("overlap must lie in [0, 1]");
    if (cfg.mempool_size < cfg.n_block) throw InvalidArgument("mempool must hold at least the block size");
    if (cfg.payload_mean < 0.0) throw InvalidArgument("payload mean must be non-negative");
    Rng rng = make_rng(cfg.seed, stream);

    Scenario s;
    std::unordered_set<std::uint64_t> sids;
    const auto lo = static_cast<std::uint64_t>(std::llround(0.5 * cfg.payload_mean));
    const auto hi = static_cast<std::uint64_t>(std::llround(1.5 * cfg.payload_mean));
    while (s.block.size() < cfg.n_block) {
        const Hash32 h = random_hash(rng);
        if (!sids.insert(short_id_key(short_id_of(h))).second) continue;
        s.block.tx_hashes.push_back(h);
        s.block.tx_payloads.push_back(random_bytes(rng, uniform_int(rng, lo, hi)));
    }
    s.block.aux_header = random_bytes(rng, 80);

    std::vector<std::uint32_t> order(cfg.n_block);
    std::iota(order.begin(), order.end(), 0U);
    std::shuffle(order.begin(), order.end(), rng);
    s.shared = static_cast<std::uint32_t>(std::llround(cfg.overlap * cfg.n_block));
    for (std::uint32_t i = 0; i < s.shared; ++i) s.mempool.add(s.block.tx_hashes[order[i]], s.block.tx_payloads[order[i]]);
    while (s.mempool.size() < cfg.mempool_size) {
        const Hash32 h = random_hash(rng);
        // Fillers never coincide with block transactions.
        if (sids.count(short_id_key(short_id_of(h))) != 0) continue;
        s.mempool.add(h);
    }
    return s;
}

std::uint64_t baseline_compact_bytes(std::uint64_t n) { return kCompactHeaderBytes + kCompactIdBytes * n; }

std::uint64_t baseline_compact_fetch_bytes(std::uint64_t missing, std::uint64_t missing_tx_bytes)
{
    if (missing == 0) return 0;
    return kGetBlockTxnHeaderBytes + kGetBlockTxnIndexBytes * missing + kBlockTxnHeaderBytes + missing_tx_bytes;
}

std::uint64_t baseline_xthin_bytes(std::uint64_t n, std::uint64_t m, std::uint64_t missing_tx_bytes)
{
    const std::uint64_t bloom_bits = filters::bloom_bits_for_fpr(m, kXthinBloomFpr);
    return filters::BloomFilter::kHeaderBytes + (bloom_bits + 7) / 8 + kCompactIdBytes * n + missing_tx_bytes;
}

TrialResult run_trial(const SweepConfig& cfg, double overlap, std::uint32_t trial)
{
    ScenarioConfig sc{cfg.n, cfg.mempool_size, overlap, cfg.payload_mean, cfg.trials,
                      derive_seed(cfg.seed, overlap_key(overlap))};
    graphene::MempoolSyncTracker tracker;
    if (cfg.warmup) {
        const Scenario warm = gen_scenario(sc, 2ULL * trial + 1);
        graphene::Transcript discard;
        graphene::protocol_run(warm.block, warm.mempool, discard, derive_seed(sc.seed, 2ULL * trial + 1), cfg.graphene,
                               &tracker);
    }
    const Scenario s = gen_scenario(sc, 2ULL * trial);
    graphene::Transcript transcript;
    const auto run = graphene::protocol_run(s.block, s.mempool, transcript, derive_seed(sc.seed, 2ULL * trial),
                                            cfg.graphene, &tracker);

    TrialResult r;
    r.success = run.success;
    r.retries = run.retries;
    r.graphene_bytes = transcript.total_bytes();
    if (!run.success) r.graphene_bytes += graphene::full_block_size(s.block);

    std::uint64_t missing_tx_bytes = 0;
    for (std::size_t i = 0; i < s.block.size(); ++i)
        if (!s.mempool.contains(s.block.tx_hashes[i])) {
            ++r.missing;
            missing_tx_bytes += tx_wire_bytes(s.block.tx_payloads[i].size());
        }
    r.compact_bytes = baseline_compact_bytes(cfg.n) + baseline_compact_fetch_bytes(r.missing, missing_tx_bytes);
    r.xthin_bytes = baseline_xthin_bytes(cfg.n, cfg.mempool_size, missing_tx_bytes);
    return r;
}

SweepReport run_sweep(const SweepConfig& cfg)
{
    if (cfg.trials == 0) throw InvalidArgument("sweep needs at least one trial per point");
    SweepReport report;
    for (double overlap : cfg.overlaps) {
        SweepRow row;
        row.overlap = overlap;
        std::uint32_t ok = 0;
        for (std::uint32_t t = 0; t < cfg.trials; ++t) {
            const TrialResult r = run_trial(cfg, overlap, t);
            row.graphene_bytes += static_cast<double>(r.graphene_bytes);
            row.compact_bytes += static_cast<double>(r.compact_bytes);
            row.xthin_bytes += static_cast<double>(r.xthin_bytes);
            row.missing_tx_count += static_cast<double>(r.missing);
            row.retries += r.retries;
            ok += r.success ? 1 : 0;
        }
        const double trials = cfg.trials;
        row.graphene_bytes /= trials;
        row.compact_bytes /= trials;
        row.xthin_bytes /= trials;
        row.missing_tx_count /= trials;
        row.retries /= trials;
        row.success_rate = ok / trials;
        report.rows.push_back(row);
    }
    report.crossover_overlap = find_crossover(report.rows);
    return report;
}

std::optional<double> find_crossover(const std::vector<SweepRow>& rows)
{
    std::vector<const SweepRow*> sorted;
    for (const auto& r : rows) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const SweepRow* a, const SweepRow* b) { return a->overlap > b->overlap; });
    for (const auto* r : sorted)
        if (r->graphene_bytes > r->compact_bytes) return r->overlap;
    return std::nullopt;
}

std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = spec.find(':', start);
        const std::string piece = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw InvalidArgument("");
        } catch (const std::exception&) {
            throw InvalidArgument("grid '" + spec + "' is not lo:hi:step or a number");
        }
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
        throw InvalidArgument("grid '" + spec + "' needs lo <= hi and a positive step");
    const auto steps = static_cast<std::int64_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    std::vector<double> out;
    for (std::int64_t i = 0; i <= steps; ++i) out.push_back(std::round((parts[0] + i * parts[2]) * 1e9) / 1e9);
    return out;
}

} // namespace blockrecon::simnet
