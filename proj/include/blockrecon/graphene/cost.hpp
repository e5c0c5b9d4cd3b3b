#pragma once

#include <cstdint>

namespace blockrecon::graphene {

struct CostParams {
    std::uint64_t m = 0; // receiver mempool size
    std::uint64_t n = 0; // block transactions
    double a = 1.0;      // expected false positives let through the Bloom filter
    double tau = 13.0;   // bytes per IBLT cell
    double d_mult = 1.5; // IBLT cells per expected difference
};

/// Bytes of a Bloom filter over n items at false-positive rate a / (m - n).
double cost_bloom_term(const CostParams& p);
/// Bytes of an IBLT sized for a differences.
double cost_iblt_term(const CostParams& p);
/// T(a): Bloom term plus IBLT term. Throws InvalidArgument unless m > n >= 1 and 0 < a <= m - n.
double cost_T(const CostParams& p);

/// Integer a in [1, m - n] minimising cost_T, ties to the smaller a. Throws unless m > n >= 1.
std::uint64_t choose_a(std::uint64_t m, std::uint64_t n, double tau, double d_mult);

} // namespace blockrecon::graphene
