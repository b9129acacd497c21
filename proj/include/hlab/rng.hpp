#pragma once
// Deterministic, platform-stable random streams. Everything that draws
// randomness in this project goes through SplitMix64 so that results are
// bit-identical across compilers (std::* distributions are not).

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace hlab {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on (0,1]; never returns 0 so log() is safe
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    double exponential(double mean) {
        return -mean * std::log(uniform01());
    }
};

// Stable seed mixing for keyed substreams (cell of a point store, site of a
// stick sample, replica of an experiment).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x8c71e3a4c5ab73efULL;
    for (std::uint64_t p : parts) {
        SplitMix64 s(h ^ p);
        h = s.next();
    }
    return h;
}

// Knuth multiplication method; fine for the small cell means used here.
inline int poisson_count(SplitMix64& rng, double mean) {
    double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform01();
    } while (p > limit);
    return k - 1;
}

} // namespace hlab
