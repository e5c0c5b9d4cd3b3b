#pragma once

#include <cstdint>

namespace blockrecon::peerscore {

struct PeerStats {
    std::uint64_t invalid_txs = 0;
    std::uint64_t random_tx_requests = 0;
    std::uint64_t new_txs = 0;
    double connection_age = 0.0; // seconds
    double weight = 0.0;         // [0, 1]
    bool trusted = false;
};

/// badTxRatio = (5 invalid + random) / (new + 1) + 1. An untrusted peer with no new
/// transactions and more than three bad ones is scaled by 1 / (bad + 1).
/// Returns (1 / badTxRatio + 1) * penalty.
double peer_quality(const PeerStats& s);

/// connection_age * quality * (1 + 10 weight).
double peer_score(const PeerStats& s, double quality);

struct QosState {
    double rtt = 20.0;
    double rtt_conf = 1.0;
    static constexpr double kTtlScaling = 3.0;
    static constexpr double kTtlLimit = 60.0;
    static constexpr double kTuningImpact = 0.25;
};

/// Blends the median peer RTT into rtt and halves the distance of rtt_conf to 1.
/// Throws InvalidArgument unless peer_median_rtt > 0.
QosState qos_tune(const QosState& q, double peer_median_rtt);

/// min(60, 3 rtt / rtt_conf).
double get_ttl(const QosState& q);

struct BootstrapConfig {
    std::uint32_t min_peers = 4;
    std::uint32_t max_peers = 64;
    std::uint64_t est_blocks_per_bootstrap = 50000;
    std::uint32_t max_new_attempts = 10;
};

/// max(1, floor(min + (max - min) * step)) with step = pulls / est_blocks clamped to [0, 1].
std::uint32_t bootstrap_peer_count(const BootstrapConfig& cfg, std::uint64_t pulls_in_progress);

/// max(0, min(max_new_attempts, 2 (target - active))).
std::uint32_t new_connection_count(const BootstrapConfig& cfg, std::int64_t target, std::int64_t active);

} // namespace blockrecon::peerscore
