#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

#include "kgforge/filter.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/rng.hpp"
#include "kgforge/triple.hpp"

namespace kgtest {

namespace fs = std::filesystem;
using kgforge::Blacklist;
using kgforge::KnowledgeBase;
using kgforge::KnowledgeBaseBuilder;
using kgforge::Rng;
using kgforge::Triple;

// Unique scratch directory, removed on scope exit.
struct TempDir {
    fs::path path;

    TempDir() {
        static std::atomic<uint64_t> counter{0};
        path = fs::temp_directory_path() /
               ("kgforge_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Noisy triples with the rule each should trip, matching the documented
// rejection patterns one-for-one.
inline std::vector<std::pair<Triple, int>> noisy_triples_with_rule() {
    return {
        {{"Poland", "Wolfram Language entity code", "Entity[\"Country\", \"Poland\"]"}, 1},
        {{"association football player", "properties for this type", "DZFoot.com player ID"}, 1},
        {{"Wikimedia Foundation", "ITU/ISO/IEC object ID", "1.3.6.1.4.1.33298"}, 2},
        {{"Regionalverband Ruhr", "official website", "https://www.rvr.ruhr/"}, 3},
        {{"United Kingdom", "demonym", "英国人"}, 4},
        {{"pneumonia", "topic's main template", "Template:Pneumonia"}, 5},
        {{"teacher", "category for eponymous categories", "Q59576065"}, 6},
        {{"Poland", "hashtag", "Poland"}, 7},
    };
}

// A clean multi-hop expansion: all fourteen triples pass every rule.
inline std::vector<Triple> retained_triples() {
    return {
        {"Ladislaus I of Hungary", "native language", "Hungarian"},
        {"Ladislaus I of Hungary", "child", "Irene of Hungary"},
        {"Ladislaus I of Hungary", "member of political party",
         "politician before the emergence of political parties"},
        {"Ladislaus I of Hungary", "place of burial", "Cathedral Basilica of St. Mary"},
        {"Cathedral Basilica of St. Mary", "country", "Romania"},
        {"Cathedral Basilica of St. Mary", "dedicated to", "Mary"},
        {"Mary", "father", "Joachim"},
        {"Mary", "languages spoken, written or signed", "Imperial Aramaic"},
        {"Mary", "ethnic group", "Jewish people"},
        {"Mary", "spouse", "Joseph"},
        {"Joseph", "given name", "Hovsep"},
        {"Joseph", "languages spoken, written or signed", "Aramaic"},
        {"Joseph", "field of work", "carpentry"},
        {"Joachim", "place of birth", "Tzippori"},
    };
}

// Expansion of a trivially-uninformative entity; every predicate is generic.
inline std::vector<Triple> left_expansion_triples() {
    return {
        {"left", "subclass of", "side"},
        {"left", "part of", "left and right"},
        {"left", "Commons category", "Left"},
        {"left", "opposite of", "right"},
        {"left", "instance of", "body relative direction"},
    };
}

// The reference ground-truth graph used for self-scoring checks.
inline std::vector<Triple> golden_reference_graph() {
    return {
        {"JOSÉ EDUARDO DOS SANTOS", "religion or worldview", "CATHOLICISM"},
        {"JOSÉ EDUARDO DOS SANTOS", "place of death", "BARCELONA"},
        {"JOSÉ EDUARDO DOS SANTOS", "country of citizenship", "ANGOLA"},
    };
}

// Random KB with deliberate noise: URL objects, identifier predicates,
// namespace prefixes, Q-ids, self loops, repeated (s,p) with distinct
// objects, and a sprinkling of blacklisted hubs. Every entity lands in
// category "Thing"; a subset also in "Human".
struct SyntheticKb {
    KnowledgeBase kb;
    Blacklist blacklist;
    std::vector<std::string> entities;
};

inline SyntheticKb make_synthetic_kb(uint64_t seed, int n_entities = 40, int n_edges = 120) {
    Rng rng(seed);
    SyntheticKb out;
    KnowledgeBaseBuilder builder;

    std::vector<std::string> entities;
    for (int i = 0; i < n_entities; ++i) entities.push_back("e" + std::to_string(i));
    std::vector<std::string> predicates = {"linked to", "part of", "near", "made by",
                                           "derived from", "sold in", "found at"};

    for (int i = 0; i < n_edges; ++i) {
        const std::string& s = entities[rng.below(entities.size())];
        const std::string& p = predicates[rng.below(predicates.size())];
        const std::string& o = entities[rng.below(entities.size())];
        switch (rng.below(12)) {
            case 0:
                builder.add_triple(s, p + " ID", o);  // r2
                break;
            case 1:
                builder.add_triple(s, p, "https://example.com/" + o);  // r3
                break;
            case 2:
                builder.add_triple(s, p, "Template:" + o);  // r5
                break;
            case 3:
                builder.add_triple(s, p, "Q" + std::to_string(10000 + rng.below(90000)));  // r6
                break;
            case 4:
                builder.add_triple(s, p, s);  // r7
                break;
            case 5: {
                // same (s,p), two distinct clean objects
                const std::string& o2 = entities[rng.below(entities.size())];
                if (o != o2 && o != s && o2 != s) {
                    builder.add_triple(s, p, o);
                    builder.add_triple(s, p, o2);
                }
                break;
            }
            default:
                if (s != o) builder.add_triple(s, p, o);
        }
    }
    for (const std::string& e : entities) {
        builder.add_category(e, "Thing");
        if (e.size() >= 2 && (e.back() - '0') % 3 == 0) builder.add_category(e, "Human");
    }
    // a couple of no-expand hubs
    out.blacklist.insert(entities[0]);
    out.blacklist.insert(entities[n_entities / 2]);

    out.kb = builder.build();
    out.entities = std::move(entities);
    return out;
}

}  // namespace kgtest
