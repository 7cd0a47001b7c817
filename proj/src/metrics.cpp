#include "kgforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "kgforge/errors.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

// counts of n-grams encoded as token spans joined with '\x1f'
std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string_view>& tokens,
                                                  size_t n) {
    std::unordered_map<std::string, int> counts;
    if (tokens.size() < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (size_t j = 0; j < n; ++j) {
            if (j) key += '\x1f';
            key += tokens[i + j];
        }
        ++counts[key];
    }
    return counts;
}

size_t lcs_length(const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    size_t n = std::min(a.size(), b.size());
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Token-level similarity with an embedding cache shared across one scoring
// call. Equal tokens short-circuit to exactly 1.0.
class TokenSimilarity {
public:
    explicit TokenSimilarity(const EmbeddingProvider& provider) : provider_(provider) {}

    double operator()(std::string_view a, std::string_view b) {
        if (a == b) return 1.0;
        return clamp01(dot(vector_of(a), vector_of(b)));
    }

private:
    const std::vector<double>& vector_of(std::string_view token) {
        auto it = cache_.find(std::string(token));
        if (it != cache_.end()) return it->second;
        std::vector<double> v;
        try {
            v = provider_.embed(token);
        } catch (const MetricBackendError&) {
            throw;
        } catch (const std::exception& e) {
            throw MetricBackendError(std::string("embedding provider failed: ") + e.what());
        }
        return cache_.emplace(std::string(token), std::move(v)).first->second;
    }

    const EmbeddingProvider& provider_;
    std::unordered_map<std::string, std::vector<double>> cache_;
};

BertScore bertscore_tokens(const std::vector<std::string_view>& cand,
                           const std::vector<std::string_view>& ref, TokenSimilarity& sim) {
    auto greedy = [&](const std::vector<std::string_view>& from,
                      const std::vector<std::string_view>& to) {
        double total = 0;
        for (std::string_view f : from) {
            double best = 0;
            for (std::string_view t : to) best = std::max(best, sim(f, t));
            total += best;
        }
        return total / static_cast<double>(from.size());
    };
    BertScore score;
    score.precision = greedy(cand, ref);
    score.recall = greedy(ref, cand);
    score.f1 = (score.precision + score.recall) > 0
                   ? 2 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
    return score;
}

// Min-cost assignment on a square matrix via shortest augmenting paths with
// potentials, O(n^3). Index order makes tie-breaking deterministic.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> match(n + 1, 0);  // match[col 1..n] = row, 1-based
    std::vector<int> way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = match[j0], j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace

std::string triple_to_sentence(const Triple& t) {
    return to_lower_ascii(t.subject + " " + t.predicate + " " + t.object);
}

double bleu_similarity(std::string_view candidate, std::string_view reference) {
    auto cand = tokenize(candidate);
    auto ref = tokenize(reference);
    if (cand.empty() || ref.empty()) return (cand.empty() && ref.empty()) ? 1.0 : 0.0;

    double log_sum = 0;
    for (size_t n = 1; n <= 4; ++n) {
        auto cand_counts = ngram_counts(cand, n);
        auto ref_counts = ngram_counts(ref, n);
        long total = 0, matched = 0;
        for (const auto& [gram, count] : cand_counts) {
            total += count;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matched += std::min(count, it->second);
        }
        double p;
        if (n == 1) {
            if (matched == 0) return 0.0;
            p = static_cast<double>(matched) / static_cast<double>(total);
        } else {
            p = static_cast<double>(matched + 1) / static_cast<double>(total + 1);
        }
        log_sum += 0.25 * std::log(p);
    }
    double brevity = 1.0;
    if (cand.size() < ref.size())
        brevity = std::exp(1.0 - static_cast<double>(ref.size()) /
                                     static_cast<double>(cand.size()));
    return brevity * std::exp(log_sum);
}

double rouge_similarity(std::string_view a, std::string_view b) {
    auto ta = tokenize(a);
    auto tb = tokenize(b);
    if (ta.empty() || tb.empty()) return (ta.empty() && tb.empty()) ? 1.0 : 0.0;
    size_t lcs = lcs_length(ta, tb);
    if (lcs == 0) return 0.0;
    // 2PR/(P+R) with P = lcs/|a|, R = lcs/|b| simplifies to this
    return 2.0 * static_cast<double>(lcs) / static_cast<double>(ta.size() + tb.size());
}

BertScore bertscore_text(std::string_view candidate, std::string_view reference,
                         const EmbeddingProvider& provider) {
    auto cand = tokenize(candidate);
    auto ref = tokenize(reference);
    if (cand.empty() || ref.empty())
        throw MetricBackendError("bertscore requires non-empty candidate and reference");
    TokenSimilarity sim(provider);
    return bertscore_tokens(cand, ref, sim);
}

std::vector<MatchEdge> optimal_match(const SimilarityMatrix& sim) {
    if (sim.rows == 0 || sim.cols == 0) return {};
    const size_t n = std::max(sim.rows, sim.cols);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (size_t r = 0; r < sim.rows; ++r)
        for (size_t c = 0; c < sim.cols; ++c) cost[r][c] = -clamp01(sim.at(r, c));

    std::vector<int> row_to_col = hungarian_min(cost);
    std::vector<MatchEdge> edges;
    for (size_t r = 0; r < sim.rows; ++r) {
        int c = row_to_col[r];
        if (c < 0 || static_cast<size_t>(c) >= sim.cols) continue;  // padded slot
        double s = sim.at(r, static_cast<size_t>(c));
        if (s > 0) edges.push_back({static_cast<int>(r), c, s});
    }
    std::sort(edges.begin(), edges.end(), [](const MatchEdge& a, const MatchEdge& b) {
        return std::pair(a.pred, a.ref) < std::pair(b.pred, b.ref);
    });
    return edges;
}

GraphScore g_score(std::span<const Triple> pred, std::span<const Triple> ref, GraphMetric metric,
                   const EmbeddingProvider* provider) {
    if (pred.empty() && ref.empty()) return {1.0, 1.0, 1.0, {}};
    if (pred.empty() || ref.empty()) return {0.0, 0.0, 0.0, {}};

    std::vector<std::string> pred_sentences, ref_sentences;
    pred_sentences.reserve(pred.size());
    ref_sentences.reserve(ref.size());
    for (const Triple& t : pred) pred_sentences.push_back(triple_to_sentence(t));
    for (const Triple& t : ref) ref_sentences.push_back(triple_to_sentence(t));

    SimilarityMatrix sim = SimilarityMatrix::zeros(pred.size(), ref.size());
    if (metric == GraphMetric::kBert) {
        if (!provider) throw MetricBackendError("graph bertscore requires an embedding provider");
        TokenSimilarity token_sim(*provider);
        std::vector<std::vector<std::string_view>> pred_tokens, ref_tokens;
        for (const std::string& s : pred_sentences) pred_tokens.push_back(tokenize(s));
        for (const std::string& s : ref_sentences) ref_tokens.push_back(tokenize(s));
        for (size_t r = 0; r < pred.size(); ++r)
            for (size_t c = 0; c < ref.size(); ++c)
                sim.at(r, c) = pred_sentences[r] == ref_sentences[c]
                                   ? 1.0
                                   : bertscore_tokens(pred_tokens[r], ref_tokens[c], token_sim).f1;
    } else {
        for (size_t r = 0; r < pred.size(); ++r) {
            for (size_t c = 0; c < ref.size(); ++c) {
                if (pred_sentences[r] == ref_sentences[c]) {
                    sim.at(r, c) = 1.0;
                } else if (metric == GraphMetric::kBleu) {
                    sim.at(r, c) = clamp01(bleu_similarity(pred_sentences[r], ref_sentences[c]));
                } else {
                    sim.at(r, c) = clamp01(rouge_similarity(pred_sentences[r], ref_sentences[c]));
                }
            }
        }
    }

    GraphScore score;
    score.alignment = optimal_match(sim);
    double matched = 0;
    for (const MatchEdge& e : score.alignment) matched += e.similarity;
    score.precision = matched / static_cast<double>(pred.size());
    score.recall = matched / static_cast<double>(ref.size());
    score.f1 = (score.precision + score.recall) > 0
                   ? 2 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
    return score;
}

}  // namespace kgforge
