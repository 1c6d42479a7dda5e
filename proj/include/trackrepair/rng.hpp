#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace trackrepair {

// mt19937_64 wrapper producing platform-independent draws. std::*_distribution
// is implementation-defined, so uniform and gaussian variates are derived from
// raw 64-bit words directly; identical seeds give identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t nextWord() { return engine_(); }

    // Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [0, n). Rejection-sampled to avoid modulo bias.
    std::uint64_t uniformIndex(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t word;
        do {
            word = engine_();
        } while (word >= limit);
        return word % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; pairs are cached.
    double gaussian() {
        if (hasSpare_) {
            hasSpare_ = false;
            return spare_;
        }
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(theta);
        hasSpare_ = true;
        return r * std::cos(theta);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    std::mt19937_64 engine_;
    bool hasSpare_ = false;
    double spare_ = 0.0;
};

// FNV-1a, used to derive per-module seeds from the global one.
constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<std::uint8_t>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Every stage draws from its own stream so stages can be re-run independently
// without perturbing each other.
constexpr std::uint64_t derivedSeed(std::uint64_t globalSeed, std::string_view moduleName) {
    return splitmix64(globalSeed ^ fnv1a(moduleName));
}

}  // namespace trackrepair
