#pragma once

#include <cstdint>

namespace blockrecon::filters {

struct BloomBenchResult {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint32_t k = 0;
    std::uint64_t probes = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t false_negatives = 0;
    double measured_fpr = 0.0;
    double analytic_fpr = 0.0;

    double relative_error() const
    {
        return analytic_fpr > 0.0 ? (measured_fpr - analytic_fpr) / analytic_fpr : 0.0;
    }
};

/// Inserts n elements into an m = round(bits_per_item * n) bit filter and probes `probes`
/// elements never inserted. k = 0 selects bloom_optimal_k.
BloomBenchResult bloom_bench(std::uint64_t n, double bits_per_item, std::uint32_t k, std::uint64_t probes,
                             std::uint64_t seed);

struct CuckooBenchResult {
    std::uint32_t bucket_count = 0;
    std::uint32_t bucket_capacity = 0;
    std::uint32_t fingerprint_bits = 0;
    double target_load = 0.0;
    std::uint64_t inserted = 0;
    std::uint64_t insert_failures = 0;
    double load = 0.0;
    std::uint64_t resident_lookups = 0;
    std::uint64_t false_negatives = 0;
    std::uint64_t probes = 0;
    std::uint64_t false_positives = 0;
    double measured_fpr = 0.0;
    std::uint64_t deleted = 0;
    /// Deleted elements still reported present although no resident element shares their
    /// (bucket pair, fingerprint); must be zero.
    std::uint64_t unexplained_after_delete = 0;
    /// Deleted elements reported present because a resident element shares their entry.
    std::uint64_t shadowed_after_delete = 0;
    /// After deleting everything: elements still reported present, and slots still occupied.
    std::uint64_t present_after_clear = 0;
    std::uint64_t occupied_after_clear = 0;
};

/// Fills a filter of `bucket_count` buckets (capacity 4) to `load`, looks up residents
/// `resident_lookups` times in total, probes `probes` absent elements, deletes half of the
/// residents and checks their lookups, then deletes the rest.
CuckooBenchResult cuckoo_bench(std::uint32_t bucket_count, std::uint32_t fingerprint_bits, double load,
                               std::uint64_t resident_lookups, std::uint64_t probes, std::uint64_t seed);

} // namespace blockrecon::filters
