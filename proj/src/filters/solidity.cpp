#include "blockrecon/filters/solidity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "blockrecon/common/error.hpp"
#include "blockrecon/common/random.hpp"
#include "blockrecon/filters/cuckoo.hpp"

namespace blockrecon::filters {

namespace {

std::array<std::uint8_t, 8> tx_key(std::uint64_t id)
{
    std::array<std::uint8_t, 8> k{};
    for (int i = 0; i < 8; ++i) k[i] = static_cast<std::uint8_t>(id >> (8 * i));
    return k;
}

/// Set with O(1) random pick and removal.
struct IndexedSet {
    std::vector<std::uint64_t> items;
    std::vector<std::int64_t> where;

    explicit IndexedSet(std::uint64_t universe) : where(universe, -1) {}
    bool has(std::uint64_t id) const { return where[id] >= 0; }
    void add(std::uint64_t id)
    {
        where[id] = static_cast<std::int64_t>(items.size());
        items.push_back(id);
    }
    void remove(std::uint64_t id)
    {
        const auto pos = static_cast<std::size_t>(where[id]);
        items[pos] = items.back();
        where[items[pos]] = static_cast<std::int64_t>(pos);
        items.pop_back();
        where[id] = -1;
    }
};

} // namespace

SolidityReport solidity_cache_simulate(std::uint64_t n_transactions, double non_solid_fraction, std::uint64_t seed,
                                       const SolidityOptions& options)
{
    if (!(non_solid_fraction >= 0.0 && non_solid_fraction <= 1.0))
        throw InvalidArgument("solidity_cache_simulate: non_solid_fraction must lie in [0, 1]");

    Rng rng = make_rng(seed, 1);
    const auto target = static_cast<std::uint64_t>(std::llround(non_solid_fraction * static_cast<double>(n_transactions)));
    auto filter = CuckooFilter::for_capacity(target, options.fingerprint_bits, derive_seed(seed, 2));

    SolidityReport report;
    IndexedSet non_solid(n_transactions);
    IndexedSet solid(n_transactions);
    std::vector<std::uint64_t> order(n_transactions);
    for (std::uint64_t i = 0; i < n_transactions; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint64_t i = 0; i < n_transactions; ++i) {
        const std::uint64_t id = order[i];
        if (i < target && filter.insert(tx_key(id))) {
            non_solid.add(id);
        } else {
            if (i < target) ++report.insert_failures;
            solid.add(id);
        }
    }
    if (n_transactions == 0) return report;

    const std::uint64_t tips = options.tips == 0 ? n_transactions : options.tips;
    for (std::uint64_t tip = 0; tip < tips; ++tip) {
        for (int parent = 0; parent < 2; ++parent) {
            const std::uint64_t id = uniform_int(rng, 0, n_transactions - 1);
            const bool hit = filter.contains(tx_key(id));
            ++report.probes;
            if (!hit) ++report.filter_misses;
            if (non_solid.has(id) && !hit) ++report.false_negatives;
            if (!non_solid.has(id) && hit) ++report.false_positive_reads;
        }
        if (!non_solid.items.empty() && !solid.items.empty()) {
            const std::uint64_t ripe = non_solid.items[uniform_int(rng, 0, non_solid.items.size() - 1)];
            const std::uint64_t fresh = solid.items[uniform_int(rng, 0, solid.items.size() - 1)];
            filter.erase(tx_key(ripe));
            non_solid.remove(ripe);
            solid.add(ripe);
            ++report.solidified;
            if (filter.insert(tx_key(fresh))) {
                solid.remove(fresh);
                non_solid.add(fresh);
            } else {
                ++report.insert_failures;
            }
        }
    }
    report.disk_reads_avoided = static_cast<double>(report.filter_misses) / static_cast<double>(report.probes);
    return report;
}

} // namespace blockrecon::filters
