#include "kgforge/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "kgforge/errors.hpp"

namespace kgforge {

std::string iso8601_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::write(const std::filesystem::path& path) const {
    nlohmann::ordered_json doc;
    doc["subcommand"] = subcommand;
    doc["artifact_version"] = artifact_version;
    doc["config"] = config;
    doc["seeds"] = seeds;
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    doc["started_at"] = started_at;
    doc["finished_at"] = finished_at;
    doc["outcome"] = outcome;

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << doc.dump(2) << '\n';
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace kgforge
