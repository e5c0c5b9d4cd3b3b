#include "blockrecon/filters/bench.hpp"

#include <array>
#include <cmath>
#include <map>

#include "blockrecon/common/random.hpp"
#include "blockrecon/filters/bloom.hpp"
#include "blockrecon/filters/cuckoo.hpp"

namespace blockrecon::filters {

namespace {

// Inserted and probed elements live in disjoint domains, so probes are never members.
std::array<std::uint8_t, 9> element(std::uint8_t domain, std::uint64_t i)
{
    std::array<std::uint8_t, 9> e{};
    e[0] = domain;
    for (int b = 0; b < 8; ++b) e[1 + b] = static_cast<std::uint8_t>(i >> (8 * b));
    return e;
}

constexpr std::uint8_t kMember = 'M';
constexpr std::uint8_t kProbe = 'P';

} // namespace

BloomBenchResult bloom_bench(std::uint64_t n, double bits_per_item, std::uint32_t k, std::uint64_t probes,
                             std::uint64_t seed)
{
    if (n == 0 || !(bits_per_item > 0.0)) throw InvalidArgument("bloom_bench: need n >= 1 and positive bits per item");
    BloomBenchResult r;
    r.n = n;
    r.m = static_cast<std::uint64_t>(std::llround(bits_per_item * static_cast<double>(n)));
    r.k = k == 0 ? bloom_optimal_k(r.m, n) : k;
    r.probes = probes;
    Rng rng = make_rng(seed);
    BloomFilter f(static_cast<std::uint32_t>(r.m), static_cast<std::uint8_t>(r.k), rng());
    for (std::uint64_t i = 0; i < n; ++i) f.insert(element(kMember, i));
    for (std::uint64_t i = 0; i < n; ++i) r.false_negatives += f.contains(element(kMember, i)) ? 0 : 1;
    for (std::uint64_t i = 0; i < probes; ++i) r.false_positives += f.contains(element(kProbe, i)) ? 1 : 0;
    r.measured_fpr = probes ? static_cast<double>(r.false_positives) / static_cast<double>(probes) : 0.0;
    r.analytic_fpr = bloom_fpr(r.m, n, r.k);
    return r;
}

CuckooBenchResult cuckoo_bench(std::uint32_t bucket_count, std::uint32_t fingerprint_bits, double load,
                               std::uint64_t resident_lookups, std::uint64_t probes, std::uint64_t seed)
{
    if (!(load > 0.0 && load <= 1.0)) throw InvalidArgument("cuckoo_bench: load must lie in (0, 1]");
    Rng rng = make_rng(seed);
    CuckooParams p;
    p.bucket_count = bucket_count;
    p.fingerprint_bits = fingerprint_bits;
    p.seed = rng();
    CuckooFilter f(p);

    CuckooBenchResult r;
    r.bucket_count = bucket_count;
    r.bucket_capacity = p.bucket_capacity;
    r.fingerprint_bits = fingerprint_bits;
    r.target_load = load;
    const auto target = static_cast<std::uint64_t>(std::floor(load * static_cast<double>(f.slot_count())));
    std::vector<std::uint64_t> resident;
    for (std::uint64_t i = 0; i < target; ++i) {
        if (f.insert(element(kMember, i))) resident.push_back(i);
        else ++r.insert_failures;
    }
    r.inserted = resident.size();
    r.load = f.load_factor();

    r.resident_lookups = resident.empty() ? 0 : resident_lookups;
    for (std::uint64_t j = 0; j < r.resident_lookups; ++j)
        r.false_negatives += f.contains(element(kMember, resident[j % resident.size()])) ? 0 : 1;
    r.probes = probes;
    for (std::uint64_t i = 0; i < probes; ++i) r.false_positives += f.contains(element(kProbe, i)) ? 1 : 0;
    r.measured_fpr = probes ? static_cast<double>(r.false_positives) / static_cast<double>(probes) : 0.0;

    // Delete every other resident; a deleted element may only still test present when a
    // remaining resident shares its canonical entry.
    std::map<std::pair<std::uint32_t, std::uint16_t>, std::uint64_t> live;
    for (std::uint64_t i : resident) ++live[f.canonical_key(element(kMember, i))];
    std::vector<std::uint64_t> kept;
    std::vector<std::uint64_t> gone;
    for (std::size_t j = 0; j < resident.size(); ++j) (j % 2 == 0 ? gone : kept).push_back(resident[j]);
    for (std::uint64_t i : gone) {
        if (f.erase(element(kMember, i))) ++r.deleted;
        --live[f.canonical_key(element(kMember, i))];
    }
    for (std::uint64_t i : gone) {
        if (!f.contains(element(kMember, i))) continue;
        if (live[f.canonical_key(element(kMember, i))] > 0) ++r.shadowed_after_delete;
        else ++r.unexplained_after_delete;
    }
    for (std::uint64_t i : kept) f.erase(element(kMember, i));
    for (std::uint64_t i : resident) r.present_after_clear += f.contains(element(kMember, i)) ? 1 : 0;
    r.occupied_after_clear = f.size();
    return r;
}

} // namespace blockrecon::filters
