#include "kgforge/curate.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>

#include <json.hpp>

#include "kgforge/errors.hpp"
#include "kgforge/prompts.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

using ordered_json = nlohmann::ordered_json;

// First non-whitespace token, with wrapping punctuation trimmed so that
// "YES." or "**no**" still parse; "YES (all non-informative)" yields "YES".
std::string leading_token(std::string_view response) {
    auto tokens = tokenize(response);
    if (tokens.empty()) return {};
    std::string_view tok = tokens.front();
    while (!tok.empty() && !std::isalnum(static_cast<unsigned char>(tok.front())))
        tok.remove_prefix(1);
    while (!tok.empty() && !std::isalnum(static_cast<unsigned char>(tok.back())))
        tok.remove_suffix(1);
    return to_lower_ascii(tok);
}

}  // namespace

CandidateSet collect_candidates(const KnowledgeBase& kb, const Blacklist& blacklist,
                                const CurateConfig& cfg, const RuleConfig& rules) {
    CandidateSet out;
    std::unordered_set<std::string> in_set;
    ExtractionConfig ecfg;
    ecfg.m = cfg.m;
    ecfg.k = cfg.k;

    for (int i = 0; i < cfg.n_traversals; ++i) {
        Rng rng(derive_seed(cfg.rng_seed, static_cast<uint64_t>(i)));
        std::string seed = kb.sample_seed(cfg.category, rng);
        Subgraph sg = extract(kb, blacklist, seed, ecfg, rng, rules);

        // neighbors discovered across hops, first occurrence wins
        std::vector<std::string> neighbors;
        std::vector<int> neighbor_hop;
        std::unordered_set<std::string_view> seen;
        for (size_t h = 0; h < sg.hop_entities.size(); ++h)
            for (const std::string& e : sg.hop_entities[h])
                if (seen.insert(e).second) {
                    neighbors.push_back(e);
                    neighbor_hop.push_back(static_cast<int>(h) + 1);
                }

        auto picked = sample_indices(rng, static_cast<uint32_t>(neighbors.size()),
                                     static_cast<uint32_t>(cfg.sample_per_traversal));
        for (uint32_t idx : picked) {
            const std::string& entity = neighbors[idx];
            const EntityRecord* record = kb.entity(entity);
            if (blacklist.contains(entity, record ? record->external_id : std::string()))
                continue;
            if (!in_set.insert(entity).second) continue;
            out.entities.push_back(entity);
            out.provenance[entity] = CandidateProvenance{seed, neighbor_hop[idx]};
        }
    }
    return out;
}

EvaluatorVerdict evaluate_entity(LlmClient& evaluator, std::string_view entity_label,
                                 std::string_view entity_id, std::span<const Triple> outgoing) {
    std::string prompt = render_noninformative_prompt(entity_label, entity_id, outgoing);
    std::string raw = evaluator.complete(prompt);
    std::string token = leading_token(raw);
    if (token == "yes") return {true, raw};
    if (token == "no") return {false, raw};
    throw EvaluatorParseError("evaluator answered outside the YES/NO contract: '" +
                              raw.substr(0, 80) + "'");
}

void write_audit_jsonl(const std::filesystem::path& path,
                       const std::vector<AuditEntry>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const AuditEntry& e : entries) {
        ordered_json rec;
        rec["entity"] = e.entity;
        rec["verdict"] = e.verdict;
        rec["raw"] = e.raw;
        rec["truncated"] = e.truncated;
        out << rec.dump() << '\n';
    }
}

CurateResult curate(const KnowledgeBase& kb, const Blacklist& seed_blacklist,
                    const CurateConfig& cfg, LlmClient& evaluator,
                    const std::optional<std::filesystem::path>& audit_path,
                    const RuleConfig& rules) {
    CurateResult result;
    result.blacklist = seed_blacklist;
    result.candidates = collect_candidates(kb, seed_blacklist, cfg, rules);

    std::ofstream audit_out;
    if (audit_path) {
        audit_out.open(*audit_path, std::ios::binary);
        if (!audit_out) throw IoError("cannot write " + audit_path->string());
    }
    auto flush_entry = [&](const AuditEntry& e) {
        result.audit.push_back(e);
        if (!audit_out.is_open()) return;
        ordered_json rec;
        rec["entity"] = e.entity;
        rec["verdict"] = e.verdict;
        rec["raw"] = e.raw;
        rec["truncated"] = e.truncated;
        audit_out << rec.dump() << '\n';
        audit_out.flush();
    };

    struct Screened {
        AuditEntry entry;
        bool add = false;
        std::exception_ptr transport_failure;
    };

    auto screen = [&](const std::string& entity) {
        Screened s;
        s.entry.entity = entity;
        std::vector<Triple> outgoing = kb.outgoing(entity);
        if (outgoing.empty()) {
            s.entry.verdict = "NO_OUTGOING";
            return s;
        }
        if (outgoing.size() > cfg.max_triples_per_prompt) {
            outgoing.resize(cfg.max_triples_per_prompt);
            s.entry.truncated = true;
        }
        const EntityRecord* record = kb.entity(entity);
        try {
            EvaluatorVerdict v = evaluate_entity(
                evaluator, entity, record ? record->external_id : std::string(), outgoing);
            s.entry.verdict = v.all_non_informative ? "YES" : "NO";
            s.entry.raw = v.raw_response;
            s.add = v.all_non_informative;
        } catch (const EvaluatorParseError& e) {
            s.entry.verdict = "PARSE_ERROR";
            s.entry.raw = e.what();
        } catch (const EvaluatorUnavailable&) {
            s.transport_failure = std::current_exception();
        }
        return s;
    };

    const auto& entities = result.candidates.entities;
    size_t chunk = static_cast<size_t>(std::max(1, cfg.jobs));
    for (size_t base = 0; base < entities.size(); base += chunk) {
        size_t end = std::min(entities.size(), base + chunk);
        std::vector<Screened> screened(end - base);
        if (chunk == 1) {
            screened[0] = screen(entities[base]);
        } else {
            std::vector<std::future<Screened>> futures;
            for (size_t i = base; i < end; ++i)
                futures.push_back(
                    std::async(std::launch::async, [&, i] { return screen(entities[i]); }));
            for (size_t i = 0; i < futures.size(); ++i) screened[i] = futures[i].get();
        }
        for (Screened& s : screened) {
            // checkpointed verdicts stay on disk even if the next one throws
            if (s.transport_failure) std::rethrow_exception(s.transport_failure);
            flush_entry(s.entry);
            if (s.add) {
                const EntityRecord* record = kb.entity(s.entry.entity);
                result.blacklist.insert(s.entry.entity,
                                        record ? record->external_id : std::string());
                ++result.added;
            }
        }
    }
    return result;
}

RuleStubEvaluator::RuleStubEvaluator() : predicates_(default_predicates()) {}

RuleStubEvaluator::RuleStubEvaluator(std::unordered_set<std::string> non_informative_predicates)
    : predicates_(std::move(non_informative_predicates)) {}

const std::unordered_set<std::string>& RuleStubEvaluator::default_predicates() {
    // generic taxonomy/meta relations whose edges say nothing specific
    static const std::unordered_set<std::string> defaults{
        "opposite of",    "instance of",        "subclass of",
        "part of",        "Commons category",   "different from",
        "has characteristic",
    };
    return defaults;
}

std::string RuleStubEvaluator::complete(const std::string& prompt) {
    // Task triples sit between the last "Triples:" label and "Question".
    size_t triples_pos = prompt.rfind("Triples:");
    if (triples_pos == std::string::npos) return "NO (malformed prompt)";
    size_t question_pos = prompt.find("Question", triples_pos);
    std::string_view section(prompt);
    section = section.substr(triples_pos,
                             question_pos == std::string::npos ? std::string_view::npos
                                                               : question_pos - triples_pos);
    bool any = false;
    for (std::string_view line : split(section, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() != '[') continue;
        nlohmann::json t = nlohmann::json::parse(line, nullptr, false);
        if (t.is_discarded() || !t.is_array() || t.size() != 3) continue;
        any = true;
        if (!predicates_.count(t[1].get<std::string>()))
            return "NO (at least one informative)";
    }
    if (!any) return "NO (malformed prompt)";
    return "YES (all non-informative)";
}

}  // namespace kgforge
