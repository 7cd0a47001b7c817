#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace kgforge {

// The atom of every graph: an ordered (subject, predicate, object) fact.
// Value type; equality is field-wise string equality.
struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
    size_t operator()(const Triple& t) const {
        std::hash<std::string> h;
        size_t a = h(t.subject);
        a = a * 0x9e3779b97f4a7c15ULL + h(t.predicate);
        a = a * 0x9e3779b97f4a7c15ULL + h(t.object);
        return a;
    }
};

struct EntityRecord {
    std::string label;
    std::string external_id;          // "Q<digits>" when known, else empty
    std::set<std::string> categories; // ordered for stable iteration
};

}  // namespace kgforge
