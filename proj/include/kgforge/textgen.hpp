#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kgforge/extract.hpp"
#include "kgforge/llm_client.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

struct SampleMeta {
    std::string seed;
    int m = 0;
    int k = 0;
    std::string model;
    std::string prompt_version;

    friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

// One (text, graph) training pair.
struct DatasetSample {
    std::string text;
    std::vector<Triple> triples;
    SampleMeta meta;

    friend bool operator==(const DatasetSample&, const DatasetSample&) = default;
};

struct Dataset {
    std::vector<DatasetSample> train;
    std::vector<DatasetSample> test;
    uint64_t split_seed = 0;
};

struct GenerateConfig {
    std::string model = "offline-mock";
    int retries = 2;              // per-subgraph regeneration budget
    int jobs = 1;                 // bounded in-flight requests
    double max_drop_rate = 0.20;  // beyond this the run is flagged failed
};

struct DropRecord {
    size_t index = 0;
    std::string seed;
    std::string reason;
};

struct GenerateResult {
    std::vector<DatasetSample> samples;  // input order, drops removed
    std::vector<DropRecord> drops;
    bool failed = false;  // drop rate above the configured ceiling
};

// One completion per subgraph through the graph-to-text prompt. Empty or
// failing generations are retried, then dropped with a record. The graph
// side of every emitted sample is byte-identical to its source subgraph.
GenerateResult generate_texts(LlmClient& client, std::span<const Subgraph> subgraphs,
                              const GenerateConfig& cfg);

// Deterministic shuffled split. The test side takes
// floor(n * (1 - train_fraction)) samples; train takes the rest.
Dataset assemble(std::vector<DatasetSample> samples, double train_fraction, uint64_t split_seed);

// JSONL record: {"text":…, "triples":[[s,p,o],…], "meta":{…}}.
void write_samples_jsonl(const std::filesystem::path& path,
                         std::span<const DatasetSample> samples);
void write_drops_jsonl(const std::filesystem::path& path, std::span<const DropRecord> drops);
std::vector<DatasetSample> read_samples_jsonl(const std::filesystem::path& path);

// Tolerant reader for externally published (text, graph) files: accepts the
// native schema plus common field aliases ("input"/"output", "kg", "graph",
// stringified triple lists, {"id": …} wrappers). Records without both a text
// and a non-empty triple list are skipped.
std::vector<DatasetSample> read_samples_flexible(const std::filesystem::path& path);

// Evaluation-side record: explicit "id" field when present, else the 0-based
// line index. Either side (text or triples) may be empty here; prediction
// files legitimately contain empty graphs.
struct EvalRecord {
    std::string id;
    std::string text;
    std::vector<Triple> triples;
};

std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path);

}  // namespace kgforge
