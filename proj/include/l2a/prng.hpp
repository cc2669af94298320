#pragma once

#include <cstdint>

#include "l2a/poly.hpp"

namespace l2a {

// xorshift64* with the multiplier 2685821657736338717.
// Recurrence: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * M.
// Fixed here (and documented in the README) so that generated instances are
// reproducible across implementations.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed ? seed : 1) {}

    std::uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 2685821657736338717ull;
    }

    int below(int n) { return n <= 0 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    // Small coefficients with denominators in {1, 2}.
    Rational small_rational() {
        int num = below(13) - 6;
        int den = 1 + below(2);
        return Rational(num, den);
    }
};

inline Poly random_poly(Rng& rng, int vars, int max_deg) {
    Poly p(vars);
    int terms = 1 + rng.below(3);
    for (int t = 0; t < terms; ++t) {
        Mono m(vars, 0);
        int deg = rng.below(max_deg + 1);
        for (int d = 0; d < deg && vars > 0; ++d) m[rng.below(vars)] += 1;
        Rational c = rng.small_rational();
        if (c != 0) p += Poly::from_terms(vars, {{m, c}});
    }
    return p;
}

}  // namespace l2a
