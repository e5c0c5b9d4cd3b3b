#include "blockrecon/peerscore/peerscore.hpp"

#include <algorithm>
#include <cmath>

#include "blockrecon/common/error.hpp"

namespace blockrecon::peerscore {

double peer_quality(const PeerStats& s)
{
    const std::uint64_t bad = s.invalid_txs + s.random_tx_requests;
    const double ratio =
        static_cast<double>(s.invalid_txs * 5 + s.random_tx_requests) / static_cast<double>(s.new_txs + 1) + 1.0;
    double penalty = 1.0;
    if (!s.trusted && s.new_txs == 0 && bad > 3) penalty = 1.0 / static_cast<double>(bad + 1);
    return (1.0 / ratio + 1.0) * penalty;
}

double peer_score(const PeerStats& s, double quality)
{
    return s.connection_age * quality * (1.0 + s.weight * 10.0);
}

QosState qos_tune(const QosState& q, double peer_median_rtt)
{
    if (!(peer_median_rtt > 0.0)) throw InvalidArgument("qos_tune: median RTT must be positive");
    QosState next = q;
    next.rtt = (1.0 - QosState::kTuningImpact) * q.rtt + QosState::kTuningImpact * peer_median_rtt;
    next.rtt_conf = q.rtt_conf + (1.0 - q.rtt_conf) / 2.0;
    return next;
}

double get_ttl(const QosState& q)
{
    if (!(q.rtt_conf > 0.0)) return QosState::kTtlLimit;
    return std::min(QosState::kTtlLimit, QosState::kTtlScaling * q.rtt / q.rtt_conf);
}

std::uint32_t bootstrap_peer_count(const BootstrapConfig& cfg, std::uint64_t pulls_in_progress)
{
    if (cfg.min_peers > cfg.max_peers) throw InvalidArgument("bootstrap: min_peers exceeds max_peers");
    double step = 1.0;
    if (cfg.est_blocks_per_bootstrap != 0)
        step = std::clamp(static_cast<double>(pulls_in_progress) / static_cast<double>(cfg.est_blocks_per_bootstrap), 0.0, 1.0);
    const double target = cfg.min_peers + (cfg.max_peers - cfg.min_peers) * step;
    return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::floor(target)));
}

std::uint32_t new_connection_count(const BootstrapConfig& cfg, std::int64_t target, std::int64_t active)
{
    const std::int64_t wanted = (target - active) * 2;
    return static_cast<std::uint32_t>(std::max<std::int64_t>(0, std::min<std::int64_t>(cfg.max_new_attempts, wanted)));
}

} // namespace blockrecon::peerscore
