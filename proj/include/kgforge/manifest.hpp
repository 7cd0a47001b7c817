#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace kgforge {

// Everything needed to reproduce a run: subcommand, the effective config,
// seeds, and the files touched. Written atomically when the run ends.
struct RunManifest {
    std::string subcommand;
    std::string artifact_version;
    std::map<std::string, std::string> config;  // effective key -> value
    std::vector<uint64_t> seeds;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string started_at;   // ISO 8601 UTC
    std::string finished_at;
    std::string outcome;  // ok | partial | failed

    void write(const std::filesystem::path& path) const;
};

std::string iso8601_utc_now();

}  // namespace kgforge
