#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace kgforge {

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// splitmix64. One word of state, identical sequences on every platform,
// which keeps seeded runs byte-reproducible (std:: distributions are not).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Unbiased draw in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        // rejection sampling over the largest multiple of n
        const uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Independent stream for (base, a, b), e.g. per (recipe index, sample index).
// Workers seeded this way produce the same output regardless of scheduling.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
    uint64_t h = mix64(base ^ 0x2545f4914f6cdd1dULL);
    h = mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (b + 0xc2b2ae3d27d4eb4fULL));
    return h;
}

// k distinct indices drawn uniformly from [0, population), returned in
// ascending order so callers keep the candidates' original ordering.
inline std::vector<uint32_t> sample_indices(Rng& rng, uint32_t population, uint32_t k) {
    if (k > population) k = population;
    std::vector<uint32_t> idx(population);
    std::iota(idx.begin(), idx.end(), 0u);
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t j = i + static_cast<uint32_t>(rng.below(population - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace kgforge
