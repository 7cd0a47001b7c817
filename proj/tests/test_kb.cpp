#include <doctest.h>

#include <algorithm>
#include <map>
#include <unordered_set>

#include "fixtures.hpp"
#include "kgforge/errors.hpp"
#include "kgforge/kb.hpp"

using namespace kgforge;
using namespace kgtest;

TEST_SUITE_BEGIN("kb");

TEST_CASE("tsv ingest parses, trims, and deduplicates") {
    TempDir tmp;
    write_file(tmp.file("kb.tsv"),
               "# comment line\n"
               "Poland\tcapital\tWarsaw\n"
               "Poland\tcapital\tWarsaw\n"
               "  France \t capital \t Paris \n"
               "\n");
    auto [kb, report] = ingest_tsv(tmp.file("kb.tsv"));
    CHECK(report.lines == 3);
    CHECK(report.triples_added == 2);
    CHECK(report.duplicates == 1);
    CHECK(kb.size() == 2);

    auto out = kb.outgoing("Poland");
    REQUIRE(out.size() == 1);
    CHECK(out[0] == Triple{"Poland", "capital", "Warsaw"});
    CHECK(kb.outgoing("France")[0].object == "Paris");
}

TEST_CASE("malformed lines are counted, not fatal, until they dominate") {
    TempDir tmp;
    write_file(tmp.file("ok.tsv"),
               "a\tb\tc\n"
               "broken line without tabs\n"
               "x\ty\tz\n"
               "too\tmany\ttabs\there\n");
    auto [kb, report] = ingest_tsv(tmp.file("ok.tsv"));
    CHECK(report.malformed == 2);
    CHECK(kb.size() == 2);

    write_file(tmp.file("bad.tsv"),
               "only one good\tline\there\n"
               "bad\n"
               "also bad\n");
    CHECK_THROWS_AS(ingest_tsv(tmp.file("bad.tsv")), FormatError);

    CHECK_THROWS_AS(ingest_tsv(tmp.file("missing.tsv")), IoError);
}

TEST_CASE("empty fields after trimming are malformed") {
    TempDir tmp;
    write_file(tmp.file("kb.tsv"), "a\t \tb\na\tp\tb\n");
    auto [kb, report] = ingest_tsv(tmp.file("kb.tsv"));
    CHECK(report.malformed == 1);
    CHECK(kb.size() == 1);
}

TEST_CASE("category file populates the index and entity table") {
    TempDir tmp;
    write_file(tmp.file("kb.tsv"), "alice\tknows\tbob\n");
    write_file(tmp.file("cats.tsv"),
               "alice\tHuman\n"
               "bob\tHuman\n"
               "alice\tHuman\n");  // duplicate pair collapses
    auto [kb, report] = ingest_tsv(tmp.file("kb.tsv"), tmp.file("cats.tsv"));
    auto members = kb.category_members("Human");
    REQUIRE(members.size() == 2);
    CHECK(members[0] == "alice");
    CHECK(kb.entity("bob") != nullptr);
    CHECK(kb.entity("bob")->categories.count("Human") == 1);
}

TEST_CASE("outgoing matches a brute-force scan on a random KB") {
    SyntheticKb synth = make_synthetic_kb(11, 30, 200);
    std::unordered_set<std::string> subjects;
    for (const Triple& t : synth.kb.triples()) subjects.insert(t.subject);
    for (const std::string& s : subjects) {
        std::vector<Triple> scan;
        for (const Triple& t : synth.kb.triples())
            if (t.subject == s) scan.push_back(t);
        CHECK(synth.kb.outgoing(s) == scan);  // same triples, same order
    }
    CHECK(synth.kb.outgoing("no such subject").empty());
}

TEST_CASE("union of outgoing lists equals the triple set") {
    SyntheticKb synth = make_synthetic_kb(5, 25, 150);
    std::unordered_set<std::string> subjects;
    for (const Triple& t : synth.kb.triples()) subjects.insert(t.subject);
    size_t total = 0;
    for (const std::string& s : subjects) total += synth.kb.outgoing(s).size();
    CHECK(total == synth.kb.size());
}

TEST_CASE("sample_seed draws uniformly") {
    KnowledgeBaseBuilder builder;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        std::string e = "h" + std::to_string(i);
        builder.add_triple(e, "p", "o" + std::to_string(i));
        builder.add_category(e, "Human");
    }
    KnowledgeBase kb = builder.build();

    std::map<std::string, int> freq;
    Rng rng(123);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++freq[kb.sample_seed("Human", rng)];
    // per-cell expectation 100, sigma ~ sqrt(100 * 0.999) ~ 10; allow 5 sigma
    for (const auto& [entity, count] : freq) {
        CHECK(count > 50);
        CHECK(count < 150);
    }
    CHECK(freq.size() == n);
}

TEST_CASE("sample_seed edge cases") {
    KnowledgeBaseBuilder builder;
    builder.add_triple("only", "p", "x");
    builder.add_category("only", "Singleton");
    KnowledgeBase kb = builder.build();
    Rng rng(1);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Rng r(seed);
        CHECK(kb.sample_seed("Singleton", r) == "only");
    }
    CHECK_THROWS_AS(kb.sample_seed("Missing", rng), NoSeedAvailable);
}

TEST_CASE("tsv round-trip preserves the triple set") {
    TempDir tmp;
    SyntheticKb synth = make_synthetic_kb(77, 30, 150);
    synth.kb.export_tsv(tmp.file("export.tsv"));
    auto [again, report] = ingest_tsv(tmp.file("export.tsv"));
    REQUIRE(again.size() == synth.kb.size());
    std::vector<Triple> a(synth.kb.triples().begin(), synth.kb.triples().end());
    std::vector<Triple> b(again.triples().begin(), again.triples().end());
    CHECK(a == b);
}

TEST_CASE("snapshot round-trip preserves triples, entities, and categories") {
    TempDir tmp;
    SyntheticKb synth = make_synthetic_kb(13, 20, 100);
    synth.kb.save_snapshot(tmp.file("kb.kgf"));
    KnowledgeBase loaded = KnowledgeBase::load_snapshot(tmp.file("kb.kgf"));

    std::vector<Triple> a(synth.kb.triples().begin(), synth.kb.triples().end());
    std::vector<Triple> b(loaded.triples().begin(), loaded.triples().end());
    CHECK(a == b);
    auto ma = synth.kb.category_members("Human");
    auto mb = loaded.category_members("Human");
    CHECK(std::vector<std::string>(ma.begin(), ma.end()) ==
          std::vector<std::string>(mb.begin(), mb.end()));
    for (const std::string& e : synth.entities) {
        const EntityRecord* ra = synth.kb.entity(e);
        const EntityRecord* rb = loaded.entity(e);
        REQUIRE(ra != nullptr);
        REQUIRE(rb != nullptr);
        CHECK(ra->categories == rb->categories);
    }
}

TEST_CASE("snapshot rejects junk and version drift") {
    TempDir tmp;
    write_file(tmp.file("junk.kgf"), "definitely not a snapshot");
    CHECK_THROWS_AS(KnowledgeBase::load_snapshot(tmp.file("junk.kgf")), FormatError);
    write_file(tmp.file("vers.kgf"), std::string("KGF1") + std::string(4, '\x07'));
    CHECK_THROWS_AS(KnowledgeBase::load_snapshot(tmp.file("vers.kgf")), FormatError);
}

TEST_CASE("two ingestions of one file produce identical orderings") {
    TempDir tmp;
    SyntheticKb synth = make_synthetic_kb(99, 35, 250);
    synth.kb.export_tsv(tmp.file("kb.tsv"));
    auto first = ingest_tsv(tmp.file("kb.tsv"));
    auto second = ingest_tsv(tmp.file("kb.tsv"));
    std::vector<Triple> a(first.kb.triples().begin(), first.kb.triples().end());
    std::vector<Triple> b(second.kb.triples().begin(), second.kb.triples().end());
    CHECK(a == b);
    for (const Triple& t : a) CHECK(first.kb.outgoing(t.subject) == second.kb.outgoing(t.subject));
}

TEST_CASE("large synthetic file loads with the harness's unique count") {
    TempDir tmp;
    std::string content;
    content.reserve(32u << 20);
    std::unordered_set<std::string> unique_lines;
    for (int i = 0; i < 1000000; ++i) {
        std::string line = "s" + std::to_string(i % 40000) + "\tp" + std::to_string(i % 17) +
                           "\to" + std::to_string(i % 9777);
        unique_lines.insert(line);
        content += line;
        content += '\n';
    }
    write_file(tmp.file("big.tsv"), content);
    auto [kb, report] = ingest_tsv(tmp.file("big.tsv"));
    CHECK(report.lines == 1000000);
    CHECK(kb.size() == unique_lines.size());
}

TEST_SUITE_END();
