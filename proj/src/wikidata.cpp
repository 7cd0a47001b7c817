#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "kgforge/errors.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

using nlohmann::json;

// Strips the framing the official dumps add around one-entity-per-line JSON:
// leading '[' / trailing ']' lines and trailing commas.
bool clean_dump_line(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv = trim(line);
    if (sv.empty() || sv == "[" || sv == "]") return false;
    if (sv.back() == ',') sv.remove_suffix(1);
    sv = trim(sv);
    if (sv.empty()) return false;
    line = std::string(sv);
    return true;
}

std::string label_in(const json& doc, const std::string& language) {
    auto labels = doc.find("labels");
    if (labels == doc.end() || !labels->is_object()) return {};
    auto lang = labels->find(language);
    if (lang == labels->end() || !lang->is_object()) return {};
    auto value = lang->find("value");
    if (value == lang->end() || !value->is_string()) return {};
    return sanitize_label(value->get<std::string>());
}

bool is_qid(std::string_view s) {
    if (s.size() < 2 || s[0] != 'Q') return false;
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

// Dates keep calendar precision only: day -> YYYY-MM-DD, month -> YYYY-MM,
// year -> YYYY. Coarser values pass through raw.
std::string format_time(const json& value) {
    std::string t = value.value("time", "");
    int precision = value.value("precision", 0);
    if (t.empty()) return t;
    bool negative = t[0] == '-';
    std::string_view body(t);
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.remove_prefix(1);
    size_t tpos = body.find('T');
    std::string_view date = body.substr(0, tpos);
    auto parts = split(date, '-');
    std::string out;
    if (precision >= 11 && parts.size() >= 3)
        out = std::string(parts[0]) + "-" + std::string(parts[1]) + "-" + std::string(parts[2]);
    else if (precision == 10 && parts.size() >= 2)
        out = std::string(parts[0]) + "-" + std::string(parts[1]);
    else if (precision == 9 && !parts.empty())
        out = std::string(parts[0]);
    else
        return t;
    return negative ? "-" + out : out;
}

// Top-rank ("truthy") selection: preferred statements shadow normal ones,
// deprecated are never taken.
std::vector<const json*> truthy_statements(const json& statements) {
    std::vector<const json*> preferred, normal;
    for (const json& st : statements) {
        std::string rank = st.value("rank", "normal");
        if (rank == "preferred")
            preferred.push_back(&st);
        else if (rank == "normal")
            normal.push_back(&st);
    }
    return preferred.empty() ? normal : preferred;
}

}  // namespace

IngestResult ingest_wikidata_json(const std::filesystem::path& path, const std::string& language) {
    // Pass 1: id -> label for every document (items and properties alike).
    std::unordered_map<std::string, std::string> id_to_label;
    uint64_t parsed_docs = 0;
    IngestReport report;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot read " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (!clean_dump_line(line)) continue;
            ++report.lines;
            json doc = json::parse(line, nullptr, false);
            if (doc.is_discarded() || !doc.is_object() || !doc.contains("id")) {
                ++report.malformed;
                continue;
            }
            ++parsed_docs;
            std::string label = label_in(doc, language);
            if (!label.empty()) id_to_label.emplace(doc["id"].get<std::string>(), std::move(label));
        }
    }
    if (parsed_docs == 0)
        throw FormatError(path.string() + ": no entity documents parsed; wrong format?");

    // Pass 2: entity records and triple emission.
    KnowledgeBaseBuilder builder;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (!clean_dump_line(line)) continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("id")) continue;
        std::string type = doc.value("type", "item");
        if (type != "item") continue;
        std::string id = doc["id"].get<std::string>();
        std::string label = label_in(doc, language);
        if (label.empty()) {
            ++report.values_skipped;  // unnamed entity: nothing label-level to emit
            continue;
        }
        if (builder.ensure_entity(label).external_id.empty()) {
            if (is_qid(id)) builder.set_external_id(label, id);
        } else if (builder.ensure_entity(label).external_id != id) {
            ++report.label_collisions;
        }
        ++report.entities;

        auto claims = doc.find("claims");
        if (claims == doc.end() || !claims->is_object()) continue;
        for (const auto& [pid, statements] : claims->items()) {
            if (!statements.is_array()) continue;
            bool human = false;
            for (const json* st : truthy_statements(statements)) {
                auto mainsnak = st->find("mainsnak");
                if (mainsnak == st->end()) {
                    ++report.values_skipped;
                    continue;
                }
                if (mainsnak->value("snaktype", "") != "value") {
                    ++report.values_skipped;
                    continue;
                }
                auto datavalue = mainsnak->find("datavalue");
                if (datavalue == mainsnak->end()) {
                    ++report.values_skipped;
                    continue;
                }
                std::string dvtype = datavalue->value("type", "");
                const json& value = (*datavalue)["value"];
                std::string object;
                if (dvtype == "wikibase-entityid") {
                    std::string oid = value.value("id", "");
                    if (pid == "P31" && oid == "Q5") human = true;
                    auto it = id_to_label.find(oid);
                    if (it == id_to_label.end()) {
                        ++report.values_skipped;
                        continue;
                    }
                    object = it->second;
                } else if (dvtype == "string") {
                    object = sanitize_label(value.get<std::string>());
                } else if (dvtype == "monolingualtext") {
                    if (value.value("language", "") != language) {
                        ++report.values_skipped;
                        continue;
                    }
                    object = sanitize_label(value.value("text", ""));
                } else if (dvtype == "quantity") {
                    std::string amount = value.value("amount", "");
                    if (!amount.empty() && amount[0] == '+') amount.erase(0, 1);
                    object = amount;
                } else if (dvtype == "time") {
                    object = format_time(value);
                } else {
                    ++report.values_skipped;
                    continue;
                }
                auto plabel = id_to_label.find(pid);
                if (plabel == id_to_label.end() || object.empty()) {
                    ++report.values_skipped;
                    continue;
                }
                if (builder.add_triple(label, plabel->second, object))
                    ++report.triples_added;
                else
                    ++report.duplicates;
            }
            if (human) builder.add_category(label, "Human");
        }
    }

    return {builder.build(), report};
}

}  // namespace kgforge
