#pragma once

// Seeded randomness. All stochastic code paths draw through Rng so that a
// pipeline seed reproduces runs bit-for-bit; uniform doubles are derived
// from raw engine words rather than std::uniform_real_distribution, whose
// output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace ldpcdes {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives a substream seed from (seed, stream labels...), e.g. per grid
// point, per population member, per batch.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = seed;
    std::uint64_t out = splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ull;
    out ^= splitmix64(s);
    s ^= b * 0xc2b2ae3d27d4eb4full;
    out ^= splitmix64(s);
    s ^= c * 0x165667b19e3779f9ull;
    out ^= splitmix64(s);
    return out;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    // Unbiased integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;  // 2^64 mod n
        if (rem == 0) return next() % n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
        std::uint64_t x = next();
        while (x > limit) x = next();
        return x % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double exponential() { return -std::log(uniform_pos()); }

    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ldpcdes
