#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgforge/textgen.hpp"

namespace kgforge {

struct DistributionSummary {
    double min = 0;
    double avg = 0;     // rounded to 2 decimals
    double median = 0;
    double max = 0;
    size_t n = 0;
};

enum class DescribeSide { kTriples, kTokens };

DistributionSummary summarize(std::span<const double> values);

// Per-sample counts of a dataset side: the triple-list length, or the text's
// token count (whitespace tokenizer by default, hook for anything else).
std::vector<double> side_counts(
    std::span<const DatasetSample> samples, DescribeSide side,
    const std::function<size_t(const std::string&)>& token_counter = nullptr);

DistributionSummary describe(
    std::span<const DatasetSample> samples, DescribeSide side,
    const std::function<size_t(const std::string&)>& token_counter = nullptr);

// Exact 1-Wasserstein distance between two empirical distributions, computed
// as the integral of |CDF_x - CDF_y| piecewise between sorted breakpoints.
double wasserstein1(std::span<const double> xs, std::span<const double> ys);

// Percentile bootstrap of the mean: `iters` resamples with replacement,
// interval from the (1±level)/2 quantiles (linear interpolation).
// Deterministic given the seed.
std::pair<double, double> bootstrap_ci(std::span<const double> scores, int iters = 10000,
                                       double level = 0.95, uint64_t rng_seed = 0);

// Paired per-sample metric values for a two-sided signed-rank test.
struct PairedScores {
    std::vector<double> a;
    std::vector<double> b;
};

// Two-sided Wilcoxon signed-rank test on the differences a[i]-b[i]. Zero
// differences drop, tied magnitudes share average ranks. Exact null
// enumeration (via the rank-sum distribution) for n <= 25, normal
// approximation with tie and continuity corrections above. All-zero
// differences yield p = 1.
double wilcoxon_signed_rank(const PairedScores& pairs);

}  // namespace kgforge
