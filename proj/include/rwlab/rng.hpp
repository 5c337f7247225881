#pragma once

#include <cassert>
#include <cstdint>

namespace rwlab {

/// splitmix64. Counter-based, so the stream for a given seed is identical on
/// every platform; all generators and harnesses in this project draw from it
/// instead of <random> distributions, whose output is implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, bound); rejection keeps it unbiased
    std::uint64_t below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int below_int(int bound) { return (int)below((std::uint64_t)bound); }

    /// uniform in [lo, hi], inclusive
    int range(int lo, int hi) {
        assert(lo <= hi);
        return lo + below_int(hi - lo + 1);
    }

    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

}  // namespace rwlab
