#pragma once

#include <cstdint>
#include <vector>

namespace blockrecon::ordering {

struct OrderingSimConfig {
    std::uint32_t n = 100;
    /// Target buckets per transaction; cells = ceil(ratio * n / buckets).
    double ratio = 1.3;
    std::uint32_t trials = 100;
    std::uint32_t buckets = 4;
    std::uint8_t k = 3;
    std::uint64_t seed = 1;
};

struct CspTrial {
    std::uint32_t trial = 0;
    std::uint32_t cells = 0;
    double actual_ratio = 0.0;
    std::uint32_t equations = 0;
    std::uint32_t resolved = 0;
    bool complete = false;
    /// Residual rank equals the unknown count: propagation plus elimination determine everything.
    bool linear_determined = false;
    std::uint32_t unencoded = 0;
    bool recovered = false;
};

struct LexTrial {
    std::uint32_t trial = 0;
    std::uint64_t payload_bytes = 0;
    bool round_trip = false;
};

CspTrial run_csp_trial(const OrderingSimConfig& cfg, std::uint32_t trial);
std::vector<CspTrial> run_csp_sim(const OrderingSimConfig& cfg);

LexTrial run_lex_trial(const OrderingSimConfig& cfg, std::uint32_t trial);
std::vector<LexTrial> run_lex_sim(const OrderingSimConfig& cfg);

} // namespace blockrecon::ordering
