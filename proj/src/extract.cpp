#include "kgforge/extract.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "kgforge/errors.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<uint32_t> pick(Rng& rng, uint32_t population, uint32_t take, SampleMode mode) {
    if (take >= population) {
        std::vector<uint32_t> all(population);
        std::iota(all.begin(), all.end(), 0u);
        return all;
    }
    if (mode == SampleMode::kTakeFirst) {
        std::vector<uint32_t> first(take);
        std::iota(first.begin(), first.end(), 0u);
        return first;
    }
    return sample_indices(rng, population, take);
}

}  // namespace

std::vector<std::string> Subgraph::entities() const {
    std::vector<std::string> out;
    std::unordered_set<std::string_view> seen;
    auto push = [&](const std::string& label) {
        if (seen.insert(label).second) out.push_back(label);
    };
    push(seed);
    for (const Triple& t : triples) {
        push(t.subject);
        push(t.object);
    }
    return out;
}

std::map<Triple, int> Subgraph::hop_of_triple() const {
    std::map<Triple, int> out;
    for (size_t i = 0; i < triples.size(); ++i) out.emplace(triples[i], hops[i]);
    return out;
}

std::vector<uint32_t> valid_candidate_indices(const KnowledgeBase& kb, const Blacklist& blacklist,
                                              std::string_view subject, const RuleConfig& rules) {
    const EntityRecord* record = kb.entity(subject);
    std::string_view external_id = record ? std::string_view(record->external_id) : "";
    if (!no_expand(blacklist, subject, external_id)) return {};

    auto indices = kb.outgoing_indices(subject);
    std::vector<char> rule_pass(indices.size(), 0);
    // one pass over the rule survivors decides sp-uniqueness per predicate
    std::unordered_map<std::string_view, std::pair<std::string_view, bool>> objects_by_predicate;
    for (size_t i = 0; i < indices.size(); ++i) {
        const Triple& t = kb.triple_at(indices[i]);
        if (!apply_rules(t, rules).passed) continue;
        rule_pass[i] = 1;
        auto [it, inserted] =
            objects_by_predicate.try_emplace(t.predicate, std::pair{std::string_view(t.object), false});
        if (!inserted && it->second.first != t.object) it->second.second = true;
    }
    std::vector<uint32_t> out;
    for (size_t i = 0; i < indices.size(); ++i) {
        if (!rule_pass[i]) continue;
        if (objects_by_predicate.at(kb.triple_at(indices[i]).predicate).second) continue;
        out.push_back(indices[i]);
    }
    return out;
}

std::vector<Triple> valid_candidates(const KnowledgeBase& kb, const Blacklist& blacklist,
                                     std::string_view subject, const RuleConfig& rules) {
    std::vector<Triple> out;
    for (uint32_t i : valid_candidate_indices(kb, blacklist, subject, rules))
        out.push_back(kb.triple_at(i));
    return out;
}

namespace {

// Precomputed subject -> F_valid indices. (kb, blacklist, rules) never change
// within a batch, so the filters run once per subject instead of once per
// visit; immutable afterwards and safe to share across workers.
class CandidateTable {
public:
    CandidateTable(const KnowledgeBase& kb, const Blacklist& blacklist, const RuleConfig& rules) {
        for (const Triple& t : kb.triples()) {
            if (by_subject_.count(t.subject)) continue;
            by_subject_.emplace(std::string_view(t.subject),
                                valid_candidate_indices(kb, blacklist, t.subject, rules));
        }
    }

    std::span<const uint32_t> candidates(std::string_view subject) const {
        auto it = by_subject_.find(subject);
        if (it == by_subject_.end()) return {};
        return it->second;
    }

private:
    // keys view into the KB's own triple storage
    std::unordered_map<std::string_view, std::vector<uint32_t>> by_subject_;
};

Subgraph extract_impl(const KnowledgeBase& kb, const Blacklist& blacklist, std::string_view seed,
                      const ExtractionConfig& cfg, Rng& rng, const RuleConfig& rules,
                      const CandidateTable* table) {
    if (!kb.has_entity(seed)) throw UnknownEntity("unknown seed entity '" + std::string(seed) + "'");

    Subgraph sg;
    sg.seed = std::string(seed);
    sg.m = cfg.m;
    sg.k = cfg.k;

    std::unordered_set<std::string> expanded;
    std::vector<std::string> frontier{sg.seed};
    for (int hop = 1; hop <= cfg.k && !frontier.empty(); ++hop) {
        std::vector<std::string> discovered;
        std::unordered_set<std::string> discovered_set;
        for (const std::string& subject : frontier) {
            if (!expanded.insert(subject).second) continue;
            std::vector<uint32_t> computed;
            std::span<const uint32_t> candidates;
            if (table) {
                candidates = table->candidates(subject);
            } else {
                computed = valid_candidate_indices(kb, blacklist, subject, rules);
                candidates = computed;
            }
            auto chosen = pick(rng, static_cast<uint32_t>(candidates.size()),
                               static_cast<uint32_t>(cfg.m), cfg.sample_mode);
            for (uint32_t idx : chosen) {
                const Triple& t = kb.triple_at(candidates[idx]);
                if (discovered_set.insert(t.object).second) discovered.push_back(t.object);
                sg.triples.push_back(t);
                sg.hops.push_back(hop);
            }
        }
        sg.hop_entities.push_back(discovered);
        // entities first seen at this hop form the next frontier
        frontier.clear();
        for (const std::string& e : discovered)
            if (!expanded.count(e)) frontier.push_back(e);
    }
    while (!sg.hop_entities.empty() && sg.hop_entities.back().empty()) sg.hop_entities.pop_back();
    return sg;
}

}  // namespace

Subgraph extract(const KnowledgeBase& kb, const Blacklist& blacklist, std::string_view seed,
                 const ExtractionConfig& cfg, Rng& rng, const RuleConfig& rules) {
    return extract_impl(kb, blacklist, seed, cfg, rng, rules, nullptr);
}

const std::vector<RecipeEntry>& ce12k_recipe() {
    static const std::vector<RecipeEntry> recipe{
        {6000, 4, 6}, {2000, 6, 1}, {2000, 2, 3}, {2000, 3, 2}};
    return recipe;
}

std::vector<RecipeEntry> parse_recipe_lines(const std::vector<std::string>& lines) {
    std::vector<RecipeEntry> out;
    for (const std::string& raw : lines) {
        std::string_view sv = trim(raw);
        if (sv.empty() || sv.front() == '#') continue;
        std::istringstream ss{std::string(sv)};
        RecipeEntry e;
        if (!(ss >> e.count >> e.m >> e.k) || e.count <= 0 || e.m <= 0 || e.k <= 0)
            throw FormatError("bad recipe line: '" + raw + "' (want: count m k, all positive)");
        out.push_back(e);
    }
    if (out.empty()) throw FormatError("recipe has no entries");
    return out;
}

std::vector<RecipeEntry> parse_recipe_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return parse_recipe_lines(lines);
}

BatchResult batch_extract(const KnowledgeBase& kb, const Blacklist& blacklist,
                          const std::vector<RecipeEntry>& recipe, const BatchOptions& options,
                          const RuleConfig& rules) {
    struct Slot {
        bool produced = false;
        Subgraph sg;
        uint64_t retries = 0;
    };

    uint64_t total = 0;
    for (const RecipeEntry& e : recipe) total += static_cast<uint64_t>(e.count);
    std::vector<Slot> slots(total);

    // Flattened (recipe index, sample index) pairs; each owns an rng stream.
    std::vector<std::pair<uint32_t, uint32_t>> tasks;
    tasks.reserve(total);
    for (uint32_t r = 0; r < recipe.size(); ++r)
        for (uint32_t s = 0; s < static_cast<uint32_t>(recipe[r].count); ++s)
            tasks.emplace_back(r, s);

    CandidateTable table(kb, blacklist, rules);

    auto run_task = [&](size_t flat) {
        auto [r, s] = tasks[flat];
        ExtractionConfig cfg;
        cfg.m = recipe[r].m;
        cfg.k = recipe[r].k;
        cfg.sample_mode = options.sample_mode;
        Rng rng(derive_seed(options.rng_seed, r, s));
        Slot& slot = slots[flat];
        for (int attempt = 0; attempt <= options.retry_budget; ++attempt) {
            std::string seed = kb.sample_seed(options.category, rng);
            Subgraph sg = extract_impl(kb, blacklist, seed, cfg, rng, rules, &table);
            if (!sg.triples.empty()) {
                slot.sg = std::move(sg);
                slot.produced = true;
                return;
            }
            ++slot.retries;
        }
    };

    int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<size_t> cursor{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<size_t>(jobs));
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (std::thread& t : workers) t.join();
    }

    BatchResult result;
    result.report.requested = total;
    for (size_t i = 0; i < slots.size(); ++i) {
        result.report.retries += slots[i].retries;
        if (slots[i].produced) {
            result.subgraphs.push_back(std::move(slots[i].sg));
        } else {
            ++result.report.exhausted;
            auto [r, s] = tasks[i];
            result.report.warnings.push_back("recipe entry " + std::to_string(r) + " sample " +
                                             std::to_string(s) +
                                             ": retry budget exhausted, sample dropped");
        }
    }
    result.report.produced = result.subgraphs.size();
    return result;
}

void write_subgraphs_jsonl(const std::filesystem::path& path,
                           const std::vector<Subgraph>& subgraphs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const Subgraph& sg : subgraphs) {
        ordered_json rec;
        rec["seed"] = sg.seed;
        rec["m"] = sg.m;
        rec["k"] = sg.k;
        ordered_json triples = ordered_json::array();
        for (const Triple& t : sg.triples)
            triples.push_back(ordered_json::array({t.subject, t.predicate, t.object}));
        rec["triples"] = std::move(triples);
        rec["hops"] = sg.hops;
        out << rec.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Subgraph> read_subgraphs_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<Subgraph> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        ordered_json rec = ordered_json::parse(sv, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad JSON record");
        Subgraph sg;
        sg.seed = rec.value("seed", "");
        sg.m = rec.value("m", 0);
        sg.k = rec.value("k", 0);
        for (const auto& t : rec.value("triples", ordered_json::array())) {
            if (!t.is_array() || t.size() != 3)
                throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad triple");
            sg.triples.push_back(Triple{t[0].get<std::string>(), t[1].get<std::string>(),
                                        t[2].get<std::string>()});
        }
        sg.hops = rec.value("hops", std::vector<int>{});
        if (sg.hops.size() != sg.triples.size())
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": hops/triples length mismatch");
        out.push_back(std::move(sg));
    }
    return out;
}

std::vector<std::string> verify_subgraph(const KnowledgeBase& kb, const Blacklist& blacklist,
                                         const Subgraph& sg, const RuleConfig& rules) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& msg) { violations.push_back(msg); };

    auto describe = [](const Triple& t) {
        return "(" + t.subject + ", " + t.predicate + ", " + t.object + ")";
    };

    std::unordered_map<std::string, int> per_subject;
    for (size_t i = 0; i < sg.triples.size(); ++i) {
        const Triple& t = sg.triples[i];
        FilterVerdict verdict = apply_rules(t, rules);
        if (!verdict.passed)
            flag("rule " + verdict.failed_rule_name() + " violated by " + describe(t));
        if (!sp_unique(kb, t.subject, t.predicate, rules))
            flag("sp-uniqueness violated by " + describe(t));
        const EntityRecord* record = kb.entity(t.subject);
        if (!no_expand(blacklist, t.subject, record ? record->external_id : std::string()))
            flag("blacklisted subject expanded: " + t.subject);
        ++per_subject[t.subject];
        if (sg.hops.size() == sg.triples.size()) {
            int hop = sg.hops[i];
            if (hop < 1 || hop > sg.k)
                flag("hop " + std::to_string(hop) + " outside [1, k] for " + describe(t));
        }
    }
    for (const auto& [subject, count] : per_subject)
        if (count > sg.m)
            flag("m-bound violated: " + subject + " has " + std::to_string(count) + " > m=" +
                 std::to_string(sg.m) + " triples");

    // hop structure: a triple's subject must be the seed (hop 1) or an object
    // discovered at a strictly smaller hop
    if (sg.hops.size() == sg.triples.size()) {
        std::unordered_map<std::string, int> first_object_hop;
        for (size_t i = 0; i < sg.triples.size(); ++i) {
            auto it = first_object_hop.find(sg.triples[i].object);
            if (it == first_object_hop.end() || sg.hops[i] < it->second)
                first_object_hop[sg.triples[i].object] = sg.hops[i];
        }
        for (size_t i = 0; i < sg.triples.size(); ++i) {
            const std::string& subject = sg.triples[i].subject;
            int hop = sg.hops[i];
            if (subject == sg.seed) continue;
            auto it = first_object_hop.find(subject);
            if (it == first_object_hop.end() || it->second >= hop)
                flag("subject " + subject + " at hop " + std::to_string(hop) +
                     " not discovered at an earlier hop");
        }
    }

    // seed connectivity over directed edges
    std::unordered_map<std::string_view, std::vector<std::string_view>> adjacency;
    std::unordered_set<std::string_view> all;
    all.insert(sg.seed);
    for (const Triple& t : sg.triples) {
        adjacency[t.subject].push_back(t.object);
        all.insert(t.subject);
        all.insert(t.object);
    }
    std::unordered_set<std::string_view> reached{std::string_view(sg.seed)};
    std::vector<std::string_view> stack{sg.seed};
    while (!stack.empty()) {
        std::string_view cur = stack.back();
        stack.pop_back();
        auto it = adjacency.find(cur);
        if (it == adjacency.end()) continue;
        for (std::string_view next : it->second)
            if (reached.insert(next).second) stack.push_back(next);
    }
    for (std::string_view label : all)
        if (!reached.count(label))
            flag("entity not reachable from seed: " + std::string(label));

    return violations;
}

}  // namespace kgforge
