#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gx {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives independent deterministic streams from a master seed.
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c = 0) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

// Uniform in [0,1) with 53-bit resolution; implementation-independent given
// the mt19937_64 stream.
inline double uniform_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(int n, std::mt19937_64& rng) {
    return static_cast<int>(uniform_real(rng) * n) % n;
}

// Index sampled proportionally to nonnegative weights.
inline int sample_weighted(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform_real(rng) * total;
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

std::vector<double> dirichlet(double alpha, size_t n, std::mt19937_64& rng);

}  // namespace gx
