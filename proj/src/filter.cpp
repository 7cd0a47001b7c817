#include "kgforge/filter.hpp"

#include <fstream>

#include "kgforge/errors.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

bool matches_qid_prefix(std::string_view s) {
    if (s.size() < 6 || s[0] != 'Q') return false;
    int digits = 0;
    for (size_t i = 1; i < s.size() && digits < 5; ++i) {
        if (s[i] < '0' || s[i] > '9') break;
        ++digits;
    }
    return digits >= 5;
}

bool has_namespace_prefix(std::string_view s) {
    return starts_with(s, "Category:") || starts_with(s, "Template:") ||
           starts_with(s, "Wikipedia:") || starts_with(s, "Portal:");
}

bool contains_url(std::string_view s) {
    return s.find("http://") != std::string_view::npos ||
           s.find("https://") != std::string_view::npos;
}

}  // namespace

const RuleConfig& RuleConfig::defaults() {
    static const RuleConfig instance{{
        "Wolfram Language entity code",
        "Wolfram Language unit code",
        "Wikidata property",
        "on focus list of Wikimedia project",
        "Commons category",
        "has part(s) of the class",
        "properties for this type",
        "described by source",
    }};
    return instance;
}

RuleConfig RuleConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    RuleConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        cfg.predicate_blacklist.insert(std::string(sv));
    }
    return cfg;
}

bool contains_blocked_script(std::string_view utf8) {
    size_t i = 0;
    const size_t n = utf8.size();
    while (i < n) {
        uint8_t b0 = static_cast<uint8_t>(utf8[i]);
        uint32_t cp = 0;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < n) {
            cp = (b0 & 0x1Fu) << 6 | (static_cast<uint8_t>(utf8[i + 1]) & 0x3Fu);
            len = 2;
        } else if ((b0 >> 4) == 0xE && i + 2 < n) {
            cp = (b0 & 0x0Fu) << 12 | (static_cast<uint8_t>(utf8[i + 1]) & 0x3Fu) << 6 |
                 (static_cast<uint8_t>(utf8[i + 2]) & 0x3Fu);
            len = 3;
        } else if ((b0 >> 3) == 0x1E && i + 3 < n) {
            cp = (b0 & 0x07u) << 18 | (static_cast<uint8_t>(utf8[i + 1]) & 0x3Fu) << 12 |
                 (static_cast<uint8_t>(utf8[i + 2]) & 0x3Fu) << 6 |
                 (static_cast<uint8_t>(utf8[i + 3]) & 0x3Fu);
            len = 4;
        }
        // invalid sequences advance one byte and never match a block
        for (auto [lo, hi] : kBlockedScriptRanges)
            if (cp >= lo && cp <= hi) return true;
        i += len;
    }
    return false;
}

FilterVerdict apply_rules(const Triple& t, const RuleConfig& rules) {
    if (rules.predicate_blacklist.count(t.predicate)) return {false, 1};
    if (t.predicate.find("ID") != std::string::npos) return {false, 2};
    if (contains_url(t.object)) return {false, 3};
    if (contains_blocked_script(t.subject) || contains_blocked_script(t.predicate) ||
        contains_blocked_script(t.object))
        return {false, 4};
    if (has_namespace_prefix(t.subject) || has_namespace_prefix(t.object)) return {false, 5};
    if (matches_qid_prefix(t.subject) || matches_qid_prefix(t.object)) return {false, 6};
    if (t.subject == t.object) return {false, 7};
    return {true, std::nullopt};
}

void Blacklist::insert(std::string label, std::string external_id) {
    if (!pairs_.insert(label + '\x1f' + external_id).second) return;
    if (!external_id.empty()) ids_.insert(external_id);
    labels_all_.insert(label);
    if (external_id.empty()) labels_bare_.insert(label);
    entries_.emplace_back(std::move(label), std::move(external_id));
}

bool Blacklist::contains(std::string_view label, std::string_view external_id) const {
    std::string key(label);
    if (external_id.empty()) return labels_all_.count(key) > 0;
    if (ids_.count(std::string(external_id)) > 0) return true;
    return labels_bare_.count(key) > 0;
}

Blacklist Blacklist::load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    Blacklist bl;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto fields = split(line, '\t');
        std::string label(trim(fields[0]));
        std::string id = fields.size() > 1 ? std::string(trim(fields[1])) : "";
        if (!label.empty()) bl.insert(std::move(label), std::move(id));
    }
    return bl;
}

void Blacklist::save_tsv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& [label, id] : entries_) out << label << '\t' << id << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

bool sp_unique(const KnowledgeBase& kb, std::string_view subject, std::string_view predicate,
               const RuleConfig& rules) {
    std::string_view first_object;
    bool seen = false;
    for (uint32_t i : kb.outgoing_indices(subject)) {
        const Triple& t = kb.triple_at(i);
        if (t.predicate != predicate) continue;
        if (!apply_rules(t, rules).passed) continue;
        if (!seen) {
            seen = true;
            first_object = t.object;
        } else if (t.object != first_object) {
            return false;
        }
    }
    return true;
}

bool no_expand(const Blacklist& blacklist, std::string_view label, std::string_view external_id) {
    return !blacklist.contains(label, external_id);
}

}  // namespace kgforge
