#pragma once

#include <span>
#include <string>
#include <string_view>

#include "kgforge/triple.hpp"

namespace kgforge {

inline constexpr std::string_view kPromptVersion = "v1";

// JSON array-of-arrays serialization shared by every prompt:
// [["s","r","o"], ...] with standard JSON string escaping.
std::string serialize_triples(std::span<const Triple> triples);

// Graph-to-text generation prompt. Requires a non-empty triple list.
std::string render_kg2text_prompt(std::span<const Triple> triples);

// Text-to-graph prompt with three in-context examples; ends with "Triples:".
// Requires text that is non-empty after trimming.
std::string render_text2kg_prompt(std::string_view text);

// Entity-triviality screening prompt used by the blacklist curator. The
// triples render one per line under the final "Triples:" label; the answer
// contract is a strict leading YES/NO.
std::string render_noninformative_prompt(std::string_view entity_label,
                                         std::string_view entity_id,
                                         std::span<const Triple> outgoing);

}  // namespace kgforge
