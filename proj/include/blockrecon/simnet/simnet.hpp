#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockrecon/graphene/protocol.hpp"
#include "blockrecon/graphene/types.hpp"

namespace blockrecon::simnet {

struct ScenarioConfig {
    std::uint32_t n_block = 400;
    std::uint64_t mempool_size = 60000;
    double overlap = 1.0;
    /// Payload sizes are uniform on [0.5, 1.5] x mean.
    double payload_mean = 300.0;
    std::uint32_t trials = 30;
    std::uint64_t seed = 1;
};

struct Scenario {
    graphene::Block block;
    graphene::Mempool mempool;
    std::uint32_t shared = 0;
};

/// Block of n transactions with distinct ShortIds; mempool holding round(overlap * n) of them
/// (with payloads) plus payload-free fillers up to mempool_size. `stream` selects an
/// independent draw under the same seed.
Scenario gen_scenario(const ScenarioConfig& cfg, std::uint64_t stream = 0);

// Baseline constants, reported in sweep metadata.
constexpr std::uint64_t kCompactHeaderBytes = 88;  // 80-byte header + 8-byte nonce
constexpr std::uint64_t kCompactIdBytes = 6;
constexpr std::uint64_t kGetBlockTxnHeaderBytes = 32; // block hash
constexpr std::uint64_t kGetBlockTxnIndexBytes = 2;
constexpr std::uint64_t kBlockTxnHeaderBytes = 32;
constexpr double kXthinBloomFpr = 0.001;

/// Wire bytes of one transaction when sent in full: hash, length, payload.
inline std::uint64_t tx_wire_bytes(std::uint64_t payload) { return 32 + 4 + payload; }

/// 6n + header.
std::uint64_t baseline_compact_bytes(std::uint64_t n);
/// Round trip for missing transactions: index request plus the transactions themselves.
/// `missing_tx_bytes` is the sum of tx_wire_bytes over the missing transactions.
std::uint64_t baseline_compact_fetch_bytes(std::uint64_t missing, std::uint64_t missing_tx_bytes);
/// Receiver Bloom filter over its m mempool entries at kXthinBloomFpr, 6n of ids, and the
/// missing transactions.
std::uint64_t baseline_xthin_bytes(std::uint64_t n, std::uint64_t m, std::uint64_t missing_tx_bytes);

struct SweepConfig {
    std::uint32_t n = 400;
    std::uint64_t mempool_size = 60000;
    std::vector<double> overlaps;
    std::uint32_t trials = 30;
    double payload_mean = 300.0;
    std::uint64_t seed = 7;
    /// Run one unmeasured block per trial first so the receiver has a missing-rate history.
    bool warmup = true;
    graphene::GrapheneConfig graphene;
};

struct SweepRow {
    double overlap = 0.0;
    double graphene_bytes = 0.0;
    double compact_bytes = 0.0;
    double xthin_bytes = 0.0;
    double missing_tx_count = 0.0;
    double retries = 0.0;
    double success_rate = 0.0;
};

struct TrialResult {
    std::uint64_t graphene_bytes = 0;
    std::uint64_t compact_bytes = 0;
    std::uint64_t xthin_bytes = 0;
    std::uint64_t missing = 0;
    std::uint32_t retries = 0;
    bool success = false;
};

/// One measured block at `overlap`. A failed exchange is charged the full block on top of the
/// bytes it already spent.
TrialResult run_trial(const SweepConfig& cfg, double overlap, std::uint32_t trial);

struct SweepReport {
    std::vector<SweepRow> rows; // in grid order
    /// Highest overlap, scanning down from the top of the grid, at which graphene costs more
    /// than the compact baseline.
    std::optional<double> crossover_overlap;
};

SweepReport run_sweep(const SweepConfig& cfg);
std::optional<double> find_crossover(const std::vector<SweepRow>& rows);

/// "lo:hi:step" inclusive grid, or a single value.
std::vector<double> parse_grid(const std::string& spec);

} // namespace blockrecon::simnet
