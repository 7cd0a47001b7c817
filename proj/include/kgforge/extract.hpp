#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kgforge/filter.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/rng.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

enum class SampleMode {
    kUniform,    // uniform without replacement
    kTakeFirst,  // deterministic prefix; used by reference checks
};

struct ExtractionConfig {
    int m = 4;  // max retained triples per expanded entity
    int k = 6;  // max hop depth
    std::string seed_category = "Human";
    uint64_t rng_seed = 0;
    SampleMode sample_mode = SampleMode::kUniform;
};

// An extracted subgraph plus provenance. `triples` and `hops` run parallel;
// hop h of a triple is the depth at which its subject was expanded (1-based).
// `hop_entities[h-1]` records the entities discovered at hop h.
struct Subgraph {
    std::string seed;
    int m = 0;
    int k = 0;
    std::vector<Triple> triples;
    std::vector<int> hops;
    std::vector<std::vector<std::string>> hop_entities;

    std::vector<std::string> entities() const;  // seed + all subjects/objects
    std::map<Triple, int> hop_of_triple() const;
};

// Outgoing triples of `subject` surviving the three inline filters, in KB
// order. Empty when the subject is blacklisted for expansion.
std::vector<Triple> valid_candidates(const KnowledgeBase& kb, const Blacklist& blacklist,
                                     std::string_view subject,
                                     const RuleConfig& rules = RuleConfig::defaults());

// Same filter, returning KB triple indices. The extraction hot path uses
// this to avoid copying candidates it will not retain.
std::vector<uint32_t> valid_candidate_indices(const KnowledgeBase& kb, const Blacklist& blacklist,
                                              std::string_view subject,
                                              const RuleConfig& rules = RuleConfig::defaults());

// Recursive bounded expansion from `seed`: hop 1 samples up to cfg.m of the
// seed's valid candidates, later hops do the same for every entity first
// discovered at the previous hop, up to depth cfg.k. Each entity is expanded
// at most once per extraction. Throws UnknownEntity for seeds the KB lacks.
Subgraph extract(const KnowledgeBase& kb, const Blacklist& blacklist, std::string_view seed,
                 const ExtractionConfig& cfg, Rng& rng,
                 const RuleConfig& rules = RuleConfig::defaults());

struct RecipeEntry {
    int count = 0;
    int m = 0;
    int k = 0;
};

// (6000,4,6) + (2000,6,1) + (2000,2,3) + (2000,3,2): the shipped 12k preset.
const std::vector<RecipeEntry>& ce12k_recipe();

// Recipe file: one `count m k` line per entry, '#' comments.
std::vector<RecipeEntry> parse_recipe_file(const std::filesystem::path& path);
std::vector<RecipeEntry> parse_recipe_lines(const std::vector<std::string>& lines);

struct BatchOptions {
    std::string category = "Human";
    uint64_t rng_seed = 0;
    int jobs = 1;
    int retry_budget = 16;  // fresh-seed retries per empty extraction
    SampleMode sample_mode = SampleMode::kUniform;
};

struct BatchReport {
    uint64_t requested = 0;
    uint64_t produced = 0;
    uint64_t retries = 0;
    uint64_t exhausted = 0;  // samples dropped after the retry budget
    std::vector<std::string> warnings;
};

struct BatchResult {
    std::vector<Subgraph> subgraphs;
    BatchReport report;
};

// Runs `count` seeded extractions per recipe entry. Every sample draws its
// own rng stream from (rng_seed, recipe index, sample index), so output is
// identical for any `jobs` value. Seeds whose subgraph comes out empty are
// redrawn until the retry budget runs out; exhausted samples are dropped and
// reported rather than emitted empty.
BatchResult batch_extract(const KnowledgeBase& kb, const Blacklist& blacklist,
                          const std::vector<RecipeEntry>& recipe, const BatchOptions& options,
                          const RuleConfig& rules = RuleConfig::defaults());

// JSONL: {"seed":…,"m":…,"k":…,"triples":[[s,p,o],…],"hops":[…]} per line.
void write_subgraphs_jsonl(const std::filesystem::path& path,
                           const std::vector<Subgraph>& subgraphs);
std::vector<Subgraph> read_subgraphs_jsonl(const std::filesystem::path& path);

// Re-verifies everything the extractor promises, without trusting it:
// rule passes, sp-uniqueness against the KB, non-expansion of blacklisted
// subjects, the m and k bounds, and seed connectivity. Returns human-readable
// violations; empty means sound.
std::vector<std::string> verify_subgraph(const KnowledgeBase& kb, const Blacklist& blacklist,
                                         const Subgraph& sg,
                                         const RuleConfig& rules = RuleConfig::defaults());

}  // namespace kgforge
