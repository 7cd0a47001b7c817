#include "kgforge/kb.hpp"

#include <cstring>
#include <fstream>

#include "kgforge/errors.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

constexpr char kSnapshotMagic[4] = {'K', 'G', 'F', '1'};
constexpr uint32_t kSnapshotVersion = 1;

void write_u32(std::ostream& out, uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_u64(std::ostream& out, uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_str(std::ostream& out, std::string_view s) {
    write_u32(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t read_u32(std::istream& in) {
    uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw FormatError("snapshot truncated");
    return v;
}

uint64_t read_u64(std::istream& in) {
    uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw FormatError("snapshot truncated");
    return v;
}

std::string read_str(std::istream& in) {
    uint32_t len = read_u32(in);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw FormatError("snapshot truncated");
    return s;
}

}  // namespace

std::vector<Triple> KnowledgeBase::outgoing(std::string_view subject) const {
    std::vector<Triple> out;
    auto idx = outgoing_indices(subject);
    out.reserve(idx.size());
    for (uint32_t i : idx) out.push_back(triples_[i]);
    return out;
}

std::span<const uint32_t> KnowledgeBase::outgoing_indices(std::string_view subject) const {
    auto it = subject_index_.find(std::string(subject));
    if (it == subject_index_.end()) return {};
    return it->second;
}

bool KnowledgeBase::has_entity(std::string_view label) const {
    std::string key(label);
    return entity_table_.count(key) > 0 || subject_index_.count(key) > 0;
}

const EntityRecord* KnowledgeBase::entity(std::string_view label) const {
    auto it = entity_table_.find(std::string(label));
    return it == entity_table_.end() ? nullptr : &it->second;
}

std::span<const std::string> KnowledgeBase::category_members(std::string_view category) const {
    auto it = category_index_.find(std::string(category));
    if (it == category_index_.end()) return {};
    return it->second;
}

std::string KnowledgeBase::sample_seed(std::string_view category, Rng& rng) const {
    auto members = category_members(category);
    if (members.empty())
        throw NoSeedAvailable("no entity in category '" + std::string(category) + "'");
    return members[rng.below(members.size())];
}

void KnowledgeBase::export_tsv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const Triple& t : triples_)
        out << t.subject << '\t' << t.predicate << '\t' << t.object << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void KnowledgeBase::save_snapshot(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(kSnapshotMagic, 4);
    write_u32(out, kSnapshotVersion);

    write_u64(out, triples_.size());
    for (const Triple& t : triples_) {
        write_str(out, t.subject);
        write_str(out, t.predicate);
        write_str(out, t.object);
    }

    write_u64(out, entity_table_.size());
    // Stable order: labels sorted, so identical KBs produce identical bytes.
    std::vector<const EntityRecord*> records;
    records.reserve(entity_table_.size());
    for (const auto& [label, record] : entity_table_) records.push_back(&record);
    std::sort(records.begin(), records.end(),
              [](const EntityRecord* a, const EntityRecord* b) { return a->label < b->label; });
    for (const EntityRecord* r : records) {
        write_str(out, r->label);
        write_str(out, r->external_id);
        write_u32(out, static_cast<uint32_t>(r->categories.size()));
        for (const std::string& c : r->categories) write_str(out, c);
    }

    write_u64(out, category_names_.size());
    for (const std::string& name : category_names_) {
        const auto& members = category_index_.at(name);
        write_str(out, name);
        write_u64(out, members.size());
        for (const std::string& m : members) write_str(out, m);
    }
    if (!out) throw IoError("write failed: " + path.string());
}

KnowledgeBase KnowledgeBase::load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0)
        throw FormatError(path.string() + " is not a KGF1 snapshot");
    uint32_t version = read_u32(in);
    if (version != kSnapshotVersion)
        throw FormatError("unsupported snapshot version " + std::to_string(version));

    KnowledgeBase kb;
    uint64_t n = read_u64(in);
    kb.triples_.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        Triple t;
        t.subject = read_str(in);
        t.predicate = read_str(in);
        t.object = read_str(in);
        kb.subject_index_[t.subject].push_back(static_cast<uint32_t>(kb.triples_.size()));
        kb.triples_.push_back(std::move(t));
    }

    uint64_t ne = read_u64(in);
    for (uint64_t i = 0; i < ne; ++i) {
        EntityRecord r;
        r.label = read_str(in);
        r.external_id = read_str(in);
        uint32_t nc = read_u32(in);
        for (uint32_t c = 0; c < nc; ++c) r.categories.insert(read_str(in));
        kb.entity_table_.emplace(r.label, std::move(r));
    }

    uint64_t ncat = read_u64(in);
    for (uint64_t i = 0; i < ncat; ++i) {
        std::string name = read_str(in);
        uint64_t count = read_u64(in);
        std::vector<std::string> members;
        members.reserve(count);
        for (uint64_t j = 0; j < count; ++j) members.push_back(read_str(in));
        kb.category_names_.push_back(name);
        kb.category_index_.emplace(std::move(name), std::move(members));
    }
    return kb;
}

bool KnowledgeBaseBuilder::add_triple(Triple t) {
    if (!seen_.insert(t).second) return false;
    kb_.subject_index_[t.subject].push_back(static_cast<uint32_t>(kb_.triples_.size()));
    kb_.triples_.push_back(std::move(t));
    return true;
}

bool KnowledgeBaseBuilder::add_triple(std::string subject, std::string predicate,
                                      std::string object) {
    return add_triple(Triple{std::move(subject), std::move(predicate), std::move(object)});
}

EntityRecord& KnowledgeBaseBuilder::ensure_entity(std::string_view label) {
    auto [it, inserted] = kb_.entity_table_.try_emplace(std::string(label));
    if (inserted) it->second.label = std::string(label);
    return it->second;
}

void KnowledgeBaseBuilder::set_external_id(std::string_view label, std::string_view id) {
    EntityRecord& r = ensure_entity(label);
    if (r.external_id.empty()) r.external_id = std::string(id);
}

void KnowledgeBaseBuilder::add_category(std::string_view label, std::string_view category) {
    ensure_entity(label);
    std::string pair = std::string(category) + '\x1f' + std::string(label);
    if (!category_pairs_.insert(std::move(pair)).second) return;
    auto [it, inserted] = kb_.category_index_.try_emplace(std::string(category));
    if (inserted) kb_.category_names_.push_back(std::string(category));
    it->second.emplace_back(label);
    kb_.entity_table_.at(std::string(label)).categories.insert(std::string(category));
}

KnowledgeBase KnowledgeBaseBuilder::build() {
    seen_.clear();
    category_pairs_.clear();
    return std::move(kb_);
}

IngestResult ingest_tsv(const std::filesystem::path& path,
                        const std::optional<std::filesystem::path>& category_path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());

    KnowledgeBaseBuilder builder;
    IngestReport report;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        ++report.lines;
        auto fields = split(line, '\t');
        if (fields.size() != 3) {
            ++report.malformed;
            continue;
        }
        std::string_view s = trim(fields[0]), p = trim(fields[1]), o = trim(fields[2]);
        if (s.empty() || p.empty() || o.empty()) {
            ++report.malformed;
            continue;
        }
        if (builder.add_triple(std::string(s), std::string(p), std::string(o)))
            ++report.triples_added;
        else
            ++report.duplicates;
    }
    if (report.lines > 0 && report.malformed * 2 > report.lines)
        throw FormatError(path.string() + ": " + std::to_string(report.malformed) + " of " +
                          std::to_string(report.lines) +
                          " lines malformed; not a TSV triple file?");

    if (category_path) {
        std::ifstream cat(*category_path, std::ios::binary);
        if (!cat) throw IoError("cannot read " + category_path->string());
        while (std::getline(cat, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string_view sv = trim(line);
            if (sv.empty() || sv.front() == '#') continue;
            auto fields = split(line, '\t');
            if (fields.size() != 2) continue;
            std::string_view entity = trim(fields[0]), category = trim(fields[1]);
            if (entity.empty() || category.empty()) continue;
            builder.add_category(entity, category);
        }
    }

    return {builder.build(), report};
}

}  // namespace kgforge
