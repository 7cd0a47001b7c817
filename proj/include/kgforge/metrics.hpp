#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/embeddings.hpp"
#include "kgforge/triple.hpp"

namespace kgforge {

// Metric aggregation version; bump when triple serialization or the
// F1-from-alignment formula changes.
inline constexpr std::string_view kMetricVersion = "v1";

// "subject predicate object" joined by single spaces, ASCII-lowercased.
// Lossy by design; every graph metric scores these sentences.
std::string triple_to_sentence(const Triple& triple);

// Sentence BLEU, n-grams up to 4 with uniform weights, add-one smoothing on
// the precisions for n >= 2, multiplied by the brevity penalty. Whitespace
// tokens. Identical strings score exactly 1, disjoint ones 0.
double bleu_similarity(std::string_view candidate, std::string_view reference);

// ROUGE-L F-measure over whitespace tokens: 2*LCS / (|a| + |b|).
double rouge_similarity(std::string_view a, std::string_view b);

struct BertScore {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Greedy max-cosine token matching, no idf weighting. Equal tokens count as
// similarity 1 exactly; negative cosines clamp to 0 so scores stay in [0,1].
// Throws MetricBackendError when the provider fails.
BertScore bertscore_text(std::string_view candidate, std::string_view reference,
                         const EmbeddingProvider& provider);

struct SimilarityMatrix {
    size_t rows = 0;  // predicted triples
    size_t cols = 0;  // reference triples
    std::vector<double> values;  // row-major, within [0,1]

    double at(size_t r, size_t c) const { return values[r * cols + c]; }
    double& at(size_t r, size_t c) { return values[r * cols + c]; }
    static SimilarityMatrix zeros(size_t rows, size_t cols) {
        return {rows, cols, std::vector<double>(rows * cols, 0.0)};
    }
};

struct MatchEdge {
    int pred = 0;
    int ref = 0;
    double similarity = 0;
};

// Maximum-weight one-to-one assignment. The smaller side is implicitly
// padded with zero-similarity slots; returned edges are real pairs with
// positive similarity, sorted by (pred, ref).
std::vector<MatchEdge> optimal_match(const SimilarityMatrix& sim);

struct GraphScore {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::vector<MatchEdge> alignment;
};

enum class GraphMetric { kBleu, kRouge, kBert };

// Alignment-based graph score: serialize triples to sentences, fill the
// pairwise similarity matrix, take the optimal one-to-one alignment, then
//   precision = matched similarity / |pred|
//   recall    = matched similarity / |ref|
// with F1 their harmonic mean. Empty pred or ref scores zero; two empty
// graphs score 1. GraphMetric::kBert uses pairwise bertscore F1 and needs a
// provider.
GraphScore g_score(std::span<const Triple> pred, std::span<const Triple> ref, GraphMetric metric,
                   const EmbeddingProvider* provider = nullptr);

}  // namespace kgforge
