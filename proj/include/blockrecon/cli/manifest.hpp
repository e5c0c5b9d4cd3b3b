#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blockrecon::cli {

/// Everything needed to rerun a CLI invocation. Written next to each CSV as
/// `<csv>.manifest.json`.
struct RunManifest {
    std::vector<std::string> subcommand; // e.g. {"peerscore", "eval"}
    /// Every option of the invocation by long name, as the text it was given (or its default).
    /// Flags hold "true" or "false".
    std::map<std::string, std::string> params;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    std::string version;
    std::string started_at;  // UTC, ISO 8601
    std::string finished_at;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);

    /// Command line equivalent to `params`, with the CSV path replaced by `csv_path`.
    std::vector<std::string> replay_args(const std::string& csv_path) const;
};

std::string manifest_path_for(const std::string& csv_path);
std::string utc_timestamp();

} // namespace blockrecon::cli
