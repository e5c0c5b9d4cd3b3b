#pragma once

#include <cstdint>

namespace blockrecon::filters {

struct SolidityOptions {
    /// Tip arrivals to simulate; 0 means one per transaction.
    std::uint64_t tips = 0;
    std::uint32_t fingerprint_bits = 12;
};

struct SolidityReport {
    std::uint64_t probes = 0;          // branch + trunk lookups
    std::uint64_t filter_misses = 0;   // lookups answered "solid" without touching disk
    double disk_reads_avoided = 0.0;   // filter_misses / probes
    std::uint64_t false_positive_reads = 0; // solid transactions the filter sent to disk
    std::uint64_t false_negatives = 0; // non-solid transactions the filter missed; must stay 0
    std::uint64_t solidified = 0;      // deletions exercised by churn
    std::uint64_t insert_failures = 0;
};

/// Cache of non-solid transactions: every tip checks its branch and trunk against a cuckoo
/// filter before going to disk. Each tip also moves one random transaction from non-solid to
/// solid (erase) and one from solid to non-solid (insert), so the non-solid fraction stays fixed.
SolidityReport solidity_cache_simulate(std::uint64_t n_transactions, double non_solid_fraction, std::uint64_t seed,
                                       const SolidityOptions& options = {});

} // namespace blockrecon::filters
