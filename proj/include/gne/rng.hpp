#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gne {

// splitmix64; used to derive independent seed streams from a root seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t root, uint64_t a, uint64_t b = 0) {
    uint64_t s = root;
    uint64_t x = splitmix64(s);
    s = x ^ (a * 0x9e3779b97f4a7c15ull);
    x = splitmix64(s);
    s = x ^ (b * 0xff51afd7ed558ccdull);
    return splitmix64(s);
}

// Thin wrapper over mt19937_64 with our own value mappings, so the output
// stream is identical across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform on [0, n) by rejection; n >= 1
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // uniform double on [0, 1) with 53 random bits
    double real() { return (double)(eng_() >> 11) * 0x1.0p-53; }

    // uniform double on (0, 1]
    double real_pos() { return (double)((eng_() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) { return real() < p; }

    // Number of failures before the next success of a Bernoulli(p) process.
    // Returns a huge value for p <= 0 (caller treats it as "past the end").
    uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return UINT64_MAX;
        double g = std::floor(std::log(real_pos()) / std::log1p(-p));
        if (g >= 9.0e18) return UINT64_MAX;
        return (uint64_t)g;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace gne
