#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "kgforge/filter.hpp"

using namespace kgforge;
using namespace kgtest;

TEST_SUITE_BEGIN("filter");

TEST_CASE("noisy fixtures fail exactly their implied rule") {
    for (const auto& [triple, rule] : noisy_triples_with_rule()) {
        FilterVerdict v = apply_rules(triple);
        CHECK_FALSE(v.passed);
        REQUIRE(v.failed_rule.has_value());
        CHECK(*v.failed_rule == rule);
    }
}

TEST_CASE("retained fixtures pass every rule") {
    for (const Triple& t : retained_triples()) {
        FilterVerdict v = apply_rules(t);
        CHECK(v.passed);
        CHECK_FALSE(v.failed_rule.has_value());
    }
}

TEST_CASE("r2 matches ID case-sensitively") {
    CHECK(apply_rules({"a", "video game", "b"}).passed);
    CHECK(apply_rules({"a", "idiom for", "b"}).passed);
    CHECK(apply_rules({"a", "DZFoot.com player ID", "b"}).failed_rule == 2);
    CHECK(apply_rules({"a", "IDentifier", "b"}).failed_rule == 2);
}

TEST_CASE("r3 catches both URL schemes anywhere in the object") {
    CHECK(apply_rules({"a", "website", "see https://x.org"}).failed_rule == 3);
    CHECK(apply_rules({"a", "website", "http://x.org"}).failed_rule == 3);
    CHECK(apply_rules({"a", "website", "x.org"}).passed);
    // subject URLs are not r3's business
    CHECK(apply_rules({"https://x.org", "redirects to", "b"}).passed);
}

TEST_CASE("r4 fires per blocked script") {
    // one sample character per blocked range
    const char* samples[] = {
        "α",      // Greek alpha
        "д",      // Cyrillic de
        "א",      // Hebrew alef
        "س",      // Arabic seen
        "ݐ",      // Arabic Supplement
        "ক",      // Bengali ka
        "カ",      // Katakana ka
        "ㄅ",      // Bopomofo b
        "英",      // CJK
    };
    for (const char* sample : samples) {
        CHECK(apply_rules({std::string("a") + sample, "p", "b"}).failed_rule == 4);
        CHECK(apply_rules({"a", std::string("p") + sample, "b"}).failed_rule == 4);
        CHECK(apply_rules({"a", "p", std::string("b") + sample}).failed_rule == 4);
    }
    // Latin accents and Hiragana are fine
    CHECK(apply_rules({"José Eduardo dos Santos", "place of death", "Barcelona"}).passed);
    CHECK(apply_rules({"a", "p", "あ"}).passed);  // Hiragana a
}

TEST_CASE("r5 checks subject and object prefixes only") {
    CHECK(apply_rules({"Category:Kings", "p", "b"}).failed_rule == 5);
    CHECK(apply_rules({"a", "p", "Portal:Things"}).failed_rule == 5);
    CHECK(apply_rules({"a", "Template:inline", "b"}).passed);  // predicate untouched
    CHECK(apply_rules({"a", "p", "subCategory:fine"}).passed); // not a prefix
}

TEST_CASE("r6 needs Q plus at least five digits at the start") {
    CHECK(apply_rules({"Q12345", "p", "b"}).failed_rule == 6);
    CHECK(apply_rules({"a", "p", "Q59576065"}).failed_rule == 6);
    CHECK(apply_rules({"a", "p", "Q123456xyz"}).failed_rule == 6);
    CHECK(apply_rules({"Q1234", "p", "b"}).passed);
    CHECK(apply_rules({"Quebec", "p", "b"}).passed);
    CHECK(apply_rules({"a", "p", "xQ12345"}).passed);
}

TEST_CASE("rule order reports the first violation") {
    // predicate blacklisted AND object is a URL: r1 wins
    Triple t{"a", "described by source", "https://x.org"};
    CHECK(apply_rules(t).failed_rule == 1);
    // URL object AND self-loop: r3 before r7
    CHECK(apply_rules({"x", "p", "x https://x.org"}).failed_rule == 3);
}

TEST_CASE("custom predicate blacklists extend r1") {
    RuleConfig rules;
    rules.predicate_blacklist = {"my custom junk"};
    CHECK(apply_rules({"a", "my custom junk", "b"}, rules).failed_rule == 1);
    CHECK(apply_rules({"a", "described by source", "b"}, rules).passed);
}

TEST_CASE("verdicts are pure") {
    Triple t{"Poland", "hashtag", "Poland"};
    for (int i = 0; i < 5; ++i) {
        FilterVerdict v = apply_rules(t);
        CHECK_FALSE(v.passed);
        CHECK(*v.failed_rule == 7);
    }
}

TEST_CASE("sp_unique flags multiple clean objects per subject-predicate") {
    KnowledgeBaseBuilder builder;
    builder.add_triple("US", "diplomatic relation", "France");
    builder.add_triple("US", "diplomatic relation", "Italy");
    builder.add_triple("US", "capital", "Washington");
    KnowledgeBase kb = builder.build();
    CHECK_FALSE(sp_unique(kb, "US", "diplomatic relation"));
    CHECK(sp_unique(kb, "US", "capital"));
    CHECK(sp_unique(kb, "US", "unused predicate"));
    CHECK(sp_unique(kb, "unknown subject", "p"));
}

TEST_CASE("sp_unique ignores objects that fail the rules") {
    KnowledgeBaseBuilder builder;
    builder.add_triple("x", "website", "https://x.org");  // rule-failing twin
    builder.add_triple("x", "website", "example site");
    KnowledgeBase kb = builder.build();
    CHECK(sp_unique(kb, "x", "website"));

    KnowledgeBaseBuilder builder2;
    builder2.add_triple("x", "website", "site one");
    builder2.add_triple("x", "website", "site two");
    KnowledgeBase kb2 = builder2.build();
    CHECK_FALSE(sp_unique(kb2, "x", "website"));
}

TEST_CASE("sp_unique is invariant under ingestion order") {
    std::vector<Triple> triples = {
        {"s", "p", "o1"}, {"s", "p", "o2"}, {"s", "q", "o1"}, {"t", "p", "o1"},
        {"s", "r", "https://x.org"}, {"s", "r", "clean"},
    };
    KnowledgeBaseBuilder forward, backward;
    for (const Triple& t : triples) forward.add_triple(t);
    for (auto it = triples.rbegin(); it != triples.rend(); ++it) backward.add_triple(*it);
    KnowledgeBase a = forward.build(), b = backward.build();
    for (const Triple& t : triples) {
        CHECK(sp_unique(a, t.subject, t.predicate) == sp_unique(b, t.subject, t.predicate));
    }
    CHECK_FALSE(sp_unique(a, "s", "p"));
    CHECK(sp_unique(a, "s", "q"));
    CHECK(sp_unique(a, "s", "r"));
}

TEST_CASE("blacklist matches by id when both sides have one, else by label") {
    Blacklist bl;
    bl.insert("left", "Q13196750");
    bl.insert("plain label");

    CHECK(bl.contains("left", "Q13196750"));
    CHECK(bl.contains("left"));                       // query without id: label match
    CHECK_FALSE(bl.contains("left", "Q999"));         // both have ids, ids differ
    CHECK(bl.contains("renamed left", "Q13196750"));  // id match under a new label
    CHECK(bl.contains("plain label", "Q123"));        // entry has no id: label match
    CHECK_FALSE(bl.contains("Albert Einstein"));
}

TEST_CASE("no_expand is the blacklist complement; empty blacklist passes everything") {
    Blacklist empty;
    CHECK(no_expand(empty, "anything"));
    CHECK(no_expand(empty, "left", "Q13196750"));

    Blacklist bl;
    bl.insert("left", "Q13196750");
    CHECK_FALSE(no_expand(bl, "left", "Q13196750"));
    CHECK(no_expand(bl, "Albert Einstein"));
}

TEST_CASE("blacklist TSV round-trip") {
    TempDir tmp;
    Blacklist bl;
    bl.insert("left", "Q13196750");
    bl.insert("no id entry");
    bl.save_tsv(tmp.file("bl.tsv"));
    Blacklist loaded = Blacklist::load_tsv(tmp.file("bl.tsv"));
    CHECK(loaded.size() == 2);
    CHECK(loaded.contains("left", "Q13196750"));
    CHECK(loaded.contains("no id entry"));
}

TEST_CASE("shipped seed blacklist loads with fifty entries") {
    const char* data_dir = std::getenv("KGFORGE_DATA_DIR");
    REQUIRE(data_dir != nullptr);
    Blacklist bl = Blacklist::load_tsv(fs::path(data_dir) / "blacklist_seed.tsv");
    CHECK(bl.size() == 50);
    CHECK(bl.contains("left", "Q13196750"));
    CHECK(bl.contains("minus sign", "Q10764194"));
    CHECK(bl.contains("Wikimedia portal", "Q4663903"));
}

TEST_CASE("shipped predicate blacklist matches the built-in default") {
    const char* data_dir = std::getenv("KGFORGE_DATA_DIR");
    REQUIRE(data_dir != nullptr);
    RuleConfig from_file = RuleConfig::from_file(fs::path(data_dir) / "predicate_blacklist.txt");
    CHECK(from_file.predicate_blacklist == RuleConfig::defaults().predicate_blacklist);
}

TEST_CASE("filtered outgoing set equals the naive scan on random KBs") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        SyntheticKb synth = make_synthetic_kb(seed, 25, 160);
        for (const std::string& s : synth.entities) {
            std::vector<Triple> mine;
            for (const Triple& t : synth.kb.outgoing(s))
                if (apply_rules(t).passed && sp_unique(synth.kb, s, t.predicate))
                    mine.push_back(t);
            CHECK(mine == [&] {
                std::vector<Triple> naive;
                for (const Triple& t : synth.kb.outgoing(s)) {
                    if (!apply_rules(t).passed) continue;
                    bool unique = true;
                    for (const Triple& u : synth.kb.outgoing(s))
                        if (u.predicate == t.predicate && u.object != t.object &&
                            apply_rules(u).passed)
                            unique = false;
                    if (unique) naive.push_back(t);
                }
                return naive;
            }());
        }
    }
}

TEST_SUITE_END();
