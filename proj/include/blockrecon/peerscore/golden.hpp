#pragma once

#include <string>
#include <vector>

namespace blockrecon::peerscore {

/// One scalar comparison from a golden-vector file.
struct GoldenCheck {
    std::string name;
    std::string op;
    std::string field; // "value" for scalar results, otherwise the state field compared
    double computed = 0.0;
    double expected = 0.0;
    bool ok = false;
};

constexpr double kGoldenTolerance = 1e-12;

/// Evaluates a JSON array of {"name", "op", "inputs", "expected"} objects. `op` is one of
/// peer_quality, peer_score, qos_tune, get_ttl, bootstrap_peer_count, new_connection_count;
/// qos_tune expects an object {"rtt", "rtt_conf"}, the others a number. Throws InvalidArgument
/// on malformed input.
std::vector<GoldenCheck> check_golden(const std::string& json_text);

} // namespace blockrecon::peerscore
