#include "kgforge/prompts.hpp"

#include <json.hpp>

#include "kgforge/errors.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

constexpr std::string_view kKg2TextTemplate =
    R"(You are a text generator that reconstructs the original text from a given knowledge graph. The knowledge graph is represented as a list of triples in the format: ["subject", "relation", "object"].

Your task is to generate a coherent, concise, and natural text that could have been the origin of the given knowledge graph. The text should accurately describe the relationships and entities in the triples, ensuring it is informative and logically structured.

Guidelines:
1. The generated text can consist of one or more paragraphs, depending on the complexity of the triples.
2. Ensure the text flows naturally, as if it were written by a human.
3. Include all entities and relationships from the triples.
4. Avoid adding any information not present in the triples.

Triples: {triples}
Text:)";

constexpr std::string_view kText2KgTemplate =
    R"(You are a knowledge graph generator. Given a text, extract entities and their relationships, and represent them as a list of triples in the format: ["subject", "relation", "object"].

Examples:

Example 1:
Text: Coburg Peak (, ) is the rocky peak rising to 783 m in Erul Heights on Trinity Peninsula in Graham Land, Antarctica. It is surmounting Cugnot Ice Piedmont to the northeast. The peak is named after the Bulgarian royal house of Coburg (Saxe-Coburg-Gotha), 1887–1946.
Triples: [["TRINITY PENINSULA", "part of", "GRAHAM LAND"], ["TRINITY PENINSULA", "continent", "ANTARCTICA"], ["GRAHAM LAND", "continent", "ANTARCTICA"]]
Example 2:
Text: Harald Kaas (19 May 1868 – 5 December 1953) was a Norwegian architect. Kaas was born in Christiania (now Oslo), Norway. He studied at the Norwegian National Academy of Craft and Art Industry, then at Baugewerkschule in Eckernförde and finally at Polytechnicum in Munich. He worked for a couple of years in the Colony of Natal in South Africa. He was employed by the Norwegian State Railways from 1908 to 1914, and designed stations on the Arendal Line, Bergen Line and Solør Line for the company. Kaas died on 5 December 1953 and was buried on 20 May 1954 at Vår Frelsers gravlund in Oslo.
Triples: [["HARALD KAAS", "date of birth", "19 MAY 1868"], ["HARALD KAAS", "date of death", "5 DECEMBER 1953"], ["HARALD KAAS", "employer", "NORWEGIAN STATE RAILWAYS"], ["POLYTECHNICUM", "headquarters location", "MUNICH"], ["BERGEN LINE", "owned by", "NORWEGIAN STATE RAILWAYS"]]
Example 3:
Text: Utus Peak (, ) is the rocky peak rising to 1217 m in Trakiya Heights on Trinity Peninsula in Graham Land, Antarctica. The peak is named after the ancient Roman town of Utus in Northern Bulgaria.
Triples: [["TRAKIYA HEIGHTS", "continent", "ANTARCTICA"], ["TRINITY PENINSULA", "part of", "GRAHAM LAND"], ["TRINITY PENINSULA", "continent", "ANTARCTICA"], ["GRAHAM LAND", "continent", "ANTARCTICA"]]

Now, generate the list of triples for the following text:
Text: {text}
Triples:)";

constexpr std::string_view kNonInformativeTemplate =
    R"(You are an expert in knowledge graph analysis.
Decide if a batch of triples about an entity contains only NON-INFORMATIVE knowledge.

Definition
- NON-INFORMATIVE: trivial, obvious, generic, or vague facts that do not add meaningful knowledge.
  This includes:
  - Common sense or obvious traits (e.g., humans are mortal, fire is hot)
  - Basic opposites or simple taxonomic facts (e.g., male opposite of female, male different from man/masculinity)
  - Overly broad or vague relations that apply to almost any entity (e.g., human has effect artificial object, human interacts with environment)
- INFORMATIVE: specific, distinctive, or non-obvious facts that provide concrete knowledge about the entity (e.g., birthplace, achievements, historical events, numerical values).

Examples

NON-INFORMATIVE:

["male", "opposite of", "female"]
["human", "has characteristic", "mortality"]
["minus sign", "opposite of", "plus sign"]
["human", "has effect", "artificial object"]
["human", "physically interacts with", "natural environment"]

INFORMATIVE:

["Albert Einstein", "born in", "Ulm"]
["Albert Einstein", "developed", "theory of relativity"]
["Paris", "capital of", "France"]
["Paris", "population", "2,161,000"]

Task

Entity: {entity_name} ({entity_id})

Triples:
{triples_text}

Question

Are all of these triples NON-INFORMATIVE?

Output (STRICT)

YES  (all non-informative)

NO   (at least one informative))";

std::string replace_once(std::string_view text, std::string_view placeholder,
                         std::string_view value) {
    std::string out(text);
    size_t pos = out.find(placeholder);
    out.replace(pos, placeholder.size(), value);
    return out;
}

std::string json_quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string triple_as_json_line(const Triple& t) {
    return "[" + json_quote(t.subject) + ", " + json_quote(t.predicate) + ", " +
           json_quote(t.object) + "]";
}

}  // namespace

std::string serialize_triples(std::span<const Triple> triples) {
    std::string out = "[";
    for (size_t i = 0; i < triples.size(); ++i) {
        if (i) out += ", ";
        out += triple_as_json_line(triples[i]);
    }
    out += "]";
    return out;
}

std::string render_kg2text_prompt(std::span<const Triple> triples) {
    if (triples.empty()) throw FormatError("kg2text prompt requires at least one triple");
    return replace_once(kKg2TextTemplate, "{triples}", serialize_triples(triples));
}

std::string render_text2kg_prompt(std::string_view text) {
    if (trim(text).empty()) throw FormatError("text2kg prompt requires non-empty text");
    return replace_once(kText2KgTemplate, "{text}", text);
}

std::string render_noninformative_prompt(std::string_view entity_label,
                                         std::string_view entity_id,
                                         std::span<const Triple> outgoing) {
    if (outgoing.empty()) throw FormatError("evaluator prompt requires at least one triple");
    std::string triples_text;
    for (size_t i = 0; i < outgoing.size(); ++i) {
        if (i) triples_text += '\n';
        triples_text += triple_as_json_line(outgoing[i]);
    }
    std::string out = replace_once(kNonInformativeTemplate, "{entity_name}", entity_label);
    out = replace_once(out, "{entity_id}", entity_id.empty() ? "unknown id" : entity_id);
    out = replace_once(out, "{triples_text}", triples_text);
    return out;
}

}  // namespace kgforge
