#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kgforge/kb.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

// Predicates dropped by rule r1. Shipped as a data file so deployments can
// extend the set; the built-in default carries the standard eight.
struct RuleConfig {
    std::unordered_set<std::string> predicate_blacklist;

    static const RuleConfig& defaults();
    static RuleConfig from_file(const std::filesystem::path& path);
};

struct FilterVerdict {
    bool passed = true;
    std::optional<int> failed_rule;  // 1..7, the FIRST rule violated

    std::string failed_rule_name() const {
        return failed_rule ? "r" + std::to_string(*failed_rule) : "";
    }
};

// Sequential evaluation of the seven deterministic triple rules,
// short-circuiting on the first failure:
//   r1: predicate not in the predicate blacklist
//   r2: predicate does not contain "ID" (case-sensitive, so "video" passes)
//   r3: object contains neither "http://" nor "https://"
//   r4: no character in a blocked script range (see kBlockedScriptRanges)
//   r5: subject/object do not start with "Category:", "Template:",
//       "Wikipedia:", "Portal:"
//   r6: subject/object do not start with 'Q' followed by >= 5 digits
//   r7: subject != object
FilterVerdict apply_rules(const Triple& triple, const RuleConfig& rules = RuleConfig::defaults());

// Blocked script ranges for r4, ordered by first code point:
// Greek and Coptic, Cyrillic, Hebrew, Arabic, Arabic Supplement (Persian),
// Bengali, Katakana, Bopomofo, CJK Unified Ideographs. Combining marks
// inside these blocks count like any other code point.
inline constexpr std::pair<uint32_t, uint32_t> kBlockedScriptRanges[] = {
    {0x0370, 0x03FF}, {0x0400, 0x04FF}, {0x0590, 0x05FF},
    {0x0600, 0x06FF}, {0x0750, 0x077F}, {0x0980, 0x09FF},
    {0x30A0, 0x30FF}, {0x3100, 0x312F}, {0x4E00, 0x9FFF},
};

bool contains_blocked_script(std::string_view utf8);

// Entities that may appear in a subgraph but must never be expanded.
// Membership matches on external_id when both sides carry one, otherwise on
// the exact label.
class Blacklist {
public:
    void insert(std::string label, std::string external_id = "");
    bool contains(std::string_view label, std::string_view external_id = {}) const;

    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    // TSV: label<TAB>external_id, external_id may be empty, '#' comments.
    static Blacklist load_tsv(const std::filesystem::path& path);
    void save_tsv(const std::filesystem::path& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;  // insertion order
    std::unordered_set<std::string> pairs_;        // "label\x1fid" dedup keys
    std::unordered_set<std::string> ids_;          // non-empty external ids
    std::unordered_set<std::string> labels_all_;   // every entry label
    std::unordered_set<std::string> labels_bare_;  // labels of id-less entries
};

// True iff the subject/predicate pair has at most one distinct rule-passing
// object anywhere in the KB. Quantifies over the full triple set, not any
// sampled subset.
bool sp_unique(const KnowledgeBase& kb, std::string_view subject, std::string_view predicate,
               const RuleConfig& rules = RuleConfig::defaults());

// True iff the entity may be expanded. Blacklisted entities still appear as
// objects; they just contribute no outgoing edges.
bool no_expand(const Blacklist& blacklist, std::string_view label,
               std::string_view external_id = {});

}  // namespace kgforge
