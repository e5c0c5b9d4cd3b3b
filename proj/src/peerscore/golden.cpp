#include "blockrecon/peerscore/golden.hpp"

#include <cmath>

#include <json.hpp>

#include "blockrecon/common/error.hpp"
#include "blockrecon/peerscore/peerscore.hpp"

namespace blockrecon::peerscore {

namespace {

using nlohmann::json;

PeerStats stats_from(const json& in)
{
    PeerStats s;
    s.invalid_txs = in.value("invalid_txs", std::uint64_t{0});
    s.random_tx_requests = in.value("random_tx_requests", std::uint64_t{0});
    s.new_txs = in.value("new_txs", std::uint64_t{0});
    s.connection_age = in.value("connection_age", 0.0);
    s.weight = in.value("weight", 0.0);
    s.trusted = in.value("trusted", false);
    return s;
}

BootstrapConfig bootstrap_from(const json& in)
{
    BootstrapConfig c;
    c.min_peers = in.value("min_peers", c.min_peers);
    c.max_peers = in.value("max_peers", c.max_peers);
    c.est_blocks_per_bootstrap = in.value("est_blocks_per_bootstrap", c.est_blocks_per_bootstrap);
    c.max_new_attempts = in.value("max_new_attempts", c.max_new_attempts);
    return c;
}

GoldenCheck compare(const std::string& name, const std::string& op, const std::string& field, double computed,
                    double expected)
{
    return GoldenCheck{name, op, field, computed, expected, std::fabs(computed - expected) <= kGoldenTolerance};
}

} // namespace

std::vector<GoldenCheck> check_golden(const std::string& json_text)
{
    std::vector<GoldenCheck> out;
    try {
        const json doc = json::parse(json_text);
        if (!doc.is_array()) throw InvalidArgument("golden vectors must be a JSON array");
        for (const auto& v : doc) {
            const std::string name = v.value("name", std::string{});
            const std::string op = v.at("op").get<std::string>();
            const json& in = v.at("inputs");
            const json& want = v.at("expected");
            if (op == "peer_quality") {
                out.push_back(compare(name, op, "value", peer_quality(stats_from(in)), want.get<double>()));
            } else if (op == "peer_score") {
                out.push_back(compare(name, op, "value", peer_score(stats_from(in), in.at("quality").get<double>()),
                                      want.get<double>()));
            } else if (op == "qos_tune") {
                QosState q;
                q.rtt = in.at("rtt").get<double>();
                q.rtt_conf = in.at("rtt_conf").get<double>();
                const std::uint32_t times = in.value("iterations", 1U);
                for (std::uint32_t i = 0; i < times; ++i) q = qos_tune(q, in.at("median").get<double>());
                out.push_back(compare(name, op, "rtt", q.rtt, want.at("rtt").get<double>()));
                out.push_back(compare(name, op, "rtt_conf", q.rtt_conf, want.at("rtt_conf").get<double>()));
            } else if (op == "get_ttl") {
                QosState q;
                q.rtt = in.at("rtt").get<double>();
                q.rtt_conf = in.at("rtt_conf").get<double>();
                out.push_back(compare(name, op, "value", get_ttl(q), want.get<double>()));
            } else if (op == "bootstrap_peer_count") {
                out.push_back(compare(name, op, "value",
                                      bootstrap_peer_count(bootstrap_from(in), in.at("pulls").get<std::uint64_t>()),
                                      want.get<double>()));
            } else if (op == "new_connection_count") {
                out.push_back(compare(name, op, "value",
                                      new_connection_count(bootstrap_from(in), in.at("target").get<std::int64_t>(),
                                                           in.at("active").get<std::int64_t>()),
                                      want.get<double>()));
            } else {
                throw InvalidArgument("unknown golden op '" + op + "'");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("golden vectors are malformed: ") + e.what());
    }
    return out;
}

} // namespace blockrecon::peerscore
