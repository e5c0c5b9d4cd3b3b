#include "blockrecon/cli/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "blockrecon/common/error.hpp"

namespace blockrecon::cli {

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["params"] = params;
    j["argv"] = argv;
    j["seed"] = seed;
    j["version"] = version;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text)
{
    RunManifest m;
    try {
        const auto j = nlohmann::json::parse(text);
        m.subcommand = j.at("subcommand").get<std::vector<std::string>>();
        m.params = j.at("params").get<std::map<std::string, std::string>>();
        m.argv = j.value("argv", std::vector<std::string>{});
        m.seed = j.value("seed", std::uint64_t{0});
        m.version = j.value("version", std::string{});
        m.started_at = j.value("started_at", std::string{});
        m.finished_at = j.value("finished_at", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("manifest is not valid: ") + e.what());
    }
    if (m.subcommand.empty()) throw InvalidArgument("manifest names no subcommand");
    return m;
}

std::vector<std::string> RunManifest::replay_args(const std::string& csv_path) const
{
    std::vector<std::string> args = subcommand;
    for (const auto& [name, value] : params) {
        if (name == "csv") continue;
        if (value == "true") {
            args.push_back("--" + name);
        } else if (value != "false" && !value.empty()) {
            args.push_back("--" + name);
            args.push_back(value);
        }
    }
    args.push_back("--csv");
    args.push_back(csv_path);
    return args;
}

std::string manifest_path_for(const std::string& csv_path) { return csv_path + ".manifest.json"; }

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace blockrecon::cli
