#include "kgforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kgforge/errors.hpp"
#include "kgforge/rng.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted[0];
    double h = q * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(h));
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

DistributionSummary summarize(std::span<const double> values) {
    if (values.empty()) throw FormatError("summarize requires at least one value");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0;
    for (double v : sorted) sum += v;
    DistributionSummary s;
    s.n = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.avg = std::round(sum / static_cast<double>(sorted.size()) * 100.0) / 100.0;
    size_t mid = sorted.size() / 2;
    s.median = (sorted.size() % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return s;
}

std::vector<double> side_counts(std::span<const DatasetSample> samples, DescribeSide side,
                                const std::function<size_t(const std::string&)>& token_counter) {
    std::vector<double> counts;
    counts.reserve(samples.size());
    for (const DatasetSample& s : samples) {
        if (side == DescribeSide::kTriples) {
            counts.push_back(static_cast<double>(s.triples.size()));
        } else if (token_counter) {
            counts.push_back(static_cast<double>(token_counter(s.text)));
        } else {
            counts.push_back(static_cast<double>(tokenize(s.text).size()));
        }
    }
    return counts;
}

DistributionSummary describe(std::span<const DatasetSample> samples, DescribeSide side,
                             const std::function<size_t(const std::string&)>& token_counter) {
    if (samples.empty()) throw FormatError("describe requires a non-empty dataset");
    std::vector<double> counts = side_counts(samples, side, token_counter);
    return summarize(counts);
}

double wasserstein1(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty() || ys.empty())
        throw FormatError("wasserstein1 requires two non-empty samples");
    std::vector<double> ax(xs.begin(), xs.end()), ay(ys.begin(), ys.end());
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());

    const double step_x = 1.0 / static_cast<double>(ax.size());
    const double step_y = 1.0 / static_cast<double>(ay.size());
    double distance = 0, cdf_x = 0, cdf_y = 0, prev = 0;
    size_t i = 0, j = 0;
    bool first = true;
    while (i < ax.size() || j < ay.size()) {
        double v = (j >= ay.size() || (i < ax.size() && ax[i] <= ay[j])) ? ax[i] : ay[j];
        if (!first) distance += std::abs(cdf_x - cdf_y) * (v - prev);
        while (i < ax.size() && ax[i] == v) {
            cdf_x += step_x;
            ++i;
        }
        while (j < ay.size() && ay[j] == v) {
            cdf_y += step_y;
            ++j;
        }
        prev = v;
        first = false;
    }
    return distance;
}

std::pair<double, double> bootstrap_ci(std::span<const double> scores, int iters, double level,
                                       uint64_t rng_seed) {
    if (scores.empty()) throw FormatError("bootstrap_ci requires at least one score");
    Rng rng(rng_seed);
    const size_t n = scores.size();
    std::vector<double> means;
    means.reserve(static_cast<size_t>(iters));
    for (int b = 0; b < iters; ++b) {
        double sum = 0;
        for (size_t i = 0; i < n; ++i) sum += scores[rng.below(n)];
        means.push_back(sum / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());
    double alpha = (1.0 - level) / 2.0;
    return {quantile_sorted(means, alpha), quantile_sorted(means, 1.0 - alpha)};
}

double wilcoxon_signed_rank(const PairedScores& pairs) {
    if (pairs.a.size() != pairs.b.size() || pairs.a.empty())
        throw FormatError("wilcoxon requires equal-length non-empty score lists");

    std::vector<double> diffs;
    for (size_t i = 0; i < pairs.a.size(); ++i) {
        double d = pairs.a[i] - pairs.b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) return 1.0;

    const size_t n = diffs.size();
    // rank |d|, average ranks over ties; scaled by 2 ranks are integers
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return std::abs(diffs[x]) < std::abs(diffs[y]); });
    std::vector<long> scaled_rank(n, 0);
    std::vector<size_t> tie_sizes;
    size_t pos = 0;
    while (pos < n) {
        size_t end = pos;
        while (end < n && std::abs(diffs[order[end]]) == std::abs(diffs[order[pos]])) ++end;
        // average of ranks pos+1 .. end, doubled: (pos+1 + end)
        long doubled = static_cast<long>(pos + 1 + end);
        for (size_t t = pos; t < end; ++t) scaled_rank[order[t]] = doubled;
        tie_sizes.push_back(end - pos);
        pos = end;
    }

    long w_plus_scaled = 0;
    long total_scaled = 0;
    for (size_t i = 0; i < n; ++i) {
        total_scaled += scaled_rank[i];
        if (diffs[i] > 0) w_plus_scaled += scaled_rank[i];
    }

    if (n <= 25) {
        // Exact null: count sign assignments by achievable scaled rank sum.
        std::vector<uint64_t> ways(static_cast<size_t>(total_scaled) + 1, 0);
        ways[0] = 1;
        for (size_t i = 0; i < n; ++i) {
            long r = scaled_rank[i];
            for (long s = total_scaled; s >= r; --s) ways[s] += ways[s - r];
        }
        uint64_t at_most = 0, at_least = 0;
        for (long s = 0; s <= total_scaled; ++s) {
            if (s <= w_plus_scaled) at_most += ways[s];
            if (s >= w_plus_scaled) at_least += ways[s];
        }
        const double denom = std::pow(2.0, static_cast<double>(n));
        double p = 2.0 * static_cast<double>(std::min(at_most, at_least)) / denom;
        return std::min(1.0, p);
    }

    // Normal approximation with tie correction and continuity correction.
    double w = static_cast<double>(w_plus_scaled) / 2.0;
    double dn = static_cast<double>(n);
    double mean = dn * (dn + 1.0) / 4.0;
    double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    for (size_t t : tie_sizes) {
        double dt = static_cast<double>(t);
        variance -= (dt * dt * dt - dt) / 48.0;
    }
    if (variance <= 0) return 1.0;
    double shifted = w - mean;
    double correction = shifted > 0 ? -0.5 : (shifted < 0 ? 0.5 : 0.0);
    double z = (shifted + correction) / std::sqrt(variance);
    double p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace kgforge
