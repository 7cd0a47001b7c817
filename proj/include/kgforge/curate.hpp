#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgforge/extract.hpp"
#include "kgforge/filter.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/llm_client.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

struct CandidateProvenance {
    std::string seed;  // traversal seed that discovered the entity
    int hop = 0;       // hop at which it was first discovered
};

// Entities potentially not worth expanding, gathered from traversals.
struct CandidateSet {
    std::vector<std::string> entities;  // ordered, no duplicates
    std::map<std::string, CandidateProvenance> provenance;
};

struct EvaluatorVerdict {
    bool all_non_informative = false;
    std::string raw_response;
};

struct CurateConfig {
    int n_traversals = 20;
    int sample_per_traversal = 5;
    int m = 4;
    int k = 3;
    std::string category = "Human";
    uint64_t rng_seed = 0;
    size_t max_triples_per_prompt = 50;  // deterministic prefix cap
    int jobs = 1;
};

// Runs `n_traversals` seeded extractions and samples up to
// `sample_per_traversal` of each traversal's discovered neighbors into the
// candidate set, skipping entities the current blacklist already covers.
// Traversal i uses the stream derive_seed(rng_seed, i), so any candidate can
// be re-verified by replaying its traversal.
CandidateSet collect_candidates(const KnowledgeBase& kb, const Blacklist& blacklist,
                                const CurateConfig& cfg,
                                const RuleConfig& rules = RuleConfig::defaults());

// Renders the screening prompt for the entity's outgoing triples, asks the
// evaluator, and parses the leading token as a strict case-insensitive
// YES/NO. Throws EvaluatorParseError on anything else.
EvaluatorVerdict evaluate_entity(LlmClient& evaluator, std::string_view entity_label,
                                 std::string_view entity_id, std::span<const Triple> outgoing);

struct AuditEntry {
    std::string entity;
    std::string verdict;  // YES | NO | PARSE_ERROR | NO_OUTGOING
    std::string raw;
    bool truncated = false;
};

struct CurateResult {
    Blacklist blacklist;  // seed entries plus additions
    CandidateSet candidates;
    std::vector<AuditEntry> audit;
    size_t added = 0;
};

// One curation round: collect candidates, screen each entity's full
// (unfiltered) outgoing triple set, and add the YES verdicts to the
// blacklist. The audit log covers every candidate exactly once; it is
// flushed incrementally to `audit_path` when given, so a transport failure
// still leaves the verdicts obtained so far on disk before the error
// propagates.
CurateResult curate(const KnowledgeBase& kb, const Blacklist& seed_blacklist,
                    const CurateConfig& cfg, LlmClient& evaluator,
                    const std::optional<std::filesystem::path>& audit_path = std::nullopt,
                    const RuleConfig& rules = RuleConfig::defaults());

void write_audit_jsonl(const std::filesystem::path& path, const std::vector<AuditEntry>& entries);

// Offline evaluator double: answers YES exactly when every predicate in the
// prompt's Task triples belongs to its non-informative set. Parses the
// triples back out of the rendered prompt so it exercises the same transport
// surface as a real endpoint.
class RuleStubEvaluator : public LlmClient {
public:
    RuleStubEvaluator();
    explicit RuleStubEvaluator(std::unordered_set<std::string> non_informative_predicates);
    std::string complete(const std::string& prompt) override;

    static const std::unordered_set<std::string>& default_predicates();

private:
    std::unordered_set<std::string> predicates_;
};

}  // namespace kgforge
