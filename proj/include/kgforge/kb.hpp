#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgforge/rng.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

struct IngestReport {
    uint64_t lines = 0;            // data lines seen (comments/blank excluded)
    uint64_t malformed = 0;        // lines that did not parse
    uint64_t triples_added = 0;
    uint64_t duplicates = 0;       // well-formed triples already present
    uint64_t entities = 0;         // entity records created (json ingestion)
    uint64_t values_skipped = 0;   // statement values that did not resolve
    uint64_t label_collisions = 0; // distinct ids mapping to one label
};

// Read-only triple store. Built once by an ingestion routine or the builder,
// then safely shared across any number of concurrent readers.
//
// Indexes:
//   subject_index: subject -> outgoing triples in ingestion order
//   category_index: category -> entity labels in ingestion order
//   entity_table:  label -> EntityRecord
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    std::span<const Triple> triples() const { return triples_; }
    size_t size() const { return triples_.size(); }

    // Outgoing edges of a subject, ingestion order. Empty for unknown subjects.
    std::vector<Triple> outgoing(std::string_view subject) const;

    // Index-based variant used on hot paths; spans stay valid for the KB's lifetime.
    std::span<const uint32_t> outgoing_indices(std::string_view subject) const;
    const Triple& triple_at(uint32_t index) const { return triples_[index]; }

    bool has_entity(std::string_view label) const;
    const EntityRecord* entity(std::string_view label) const;
    std::span<const std::string> category_members(std::string_view category) const;
    size_t entity_count() const { return entity_table_.size(); }

    // Uniform draw from a category. Throws NoSeedAvailable if the category is
    // missing or empty.
    std::string sample_seed(std::string_view category, Rng& rng) const;

    void export_tsv(const std::filesystem::path& path) const;

    // Versioned binary snapshot (magic "KGF1"). The dump parse is the slow
    // step worth caching; snapshots reload in seconds.
    void save_snapshot(const std::filesystem::path& path) const;
    static KnowledgeBase load_snapshot(const std::filesystem::path& path);

private:
    friend class KnowledgeBaseBuilder;

    std::vector<Triple> triples_;
    std::unordered_map<std::string, std::vector<uint32_t>> subject_index_;
    std::vector<std::string> category_names_;  // ingestion order
    std::unordered_map<std::string, std::vector<std::string>> category_index_;
    std::unordered_map<std::string, EntityRecord> entity_table_;
};

// Accumulates triples/entities with deduplication, then freezes into a KB.
class KnowledgeBaseBuilder {
public:
    // Returns false when the triple was already present.
    bool add_triple(Triple t);
    bool add_triple(std::string subject, std::string predicate, std::string object);

    // Creates the record if needed; keeps the first external_id seen.
    EntityRecord& ensure_entity(std::string_view label);
    void set_external_id(std::string_view label, std::string_view id);
    void add_category(std::string_view label, std::string_view category);

    size_t triple_count() const { return kb_.triples_.size(); }

    KnowledgeBase build();

private:
    KnowledgeBase kb_;
    std::unordered_set<Triple, TripleHash> seen_;
    std::unordered_set<std::string> category_pairs_;  // "<category>\x1f<label>"
};

struct IngestResult {
    KnowledgeBase kb;
    IngestReport report;
};

// TSV triples: UTF-8, LF endings, exactly two TABs per line, '#' comments.
// Optional category file: entity<TAB>category.
// Throws IoError when unreadable, FormatError when >50% of data lines are bad.
IngestResult ingest_tsv(const std::filesystem::path& path,
                        const std::optional<std::filesystem::path>& category_path = std::nullopt);

// Line-delimited entity documents in knowledge-base dump style (one JSON
// object per line, tolerant of the official dumps' surrounding brackets and
// trailing commas). Two passes: pass 1 builds the id->label table for the
// requested language, pass 2 emits (entity label, property label, value
// label) triples for top-rank statements. Entities with an
// instance-of -> human statement gain category "Human".
// Throws FormatError when no entity parses at all.
IngestResult ingest_wikidata_json(const std::filesystem::path& path, const std::string& language);

}  // namespace kgforge
