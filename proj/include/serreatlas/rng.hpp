#pragma once
#include "serreatlas/rational.hpp"

#include <cstdint>

namespace serreatlas {

// Deterministic splitmix64 stream; identical output on every platform.
// Forking with mix() gives independent streams for parallel, order-free sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), unbiased
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % n;
        }
    }

    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // numerator in [-num_bound, num_bound], denominator in [1, den_bound]
    Rat rat(int num_bound, int den_bound) {
        return Rat(range(-num_bound, num_bound), range(1, den_bound));
    }

    Rat nonzero_rat(int num_bound, int den_bound) {
        for (;;) {
            Rat r = rat(num_bound, den_bound);
            if (r != 0) return r;
        }
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
        return r.next();
    }

private:
    std::uint64_t state_;
};

} // namespace serreatlas
