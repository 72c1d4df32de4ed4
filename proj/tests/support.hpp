#pragma once

// Shared helpers for the unit and property tests. Randomised tests seed from
// DIFFCOMP_TEST_SEED (default 0) so every failure can be replayed.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "diffcomp/cyclotomic.hpp"
#include "diffcomp/multipoly.hpp"

namespace testing {

inline std::uint64_t test_seed() {
    const char* env = std::getenv("DIFFCOMP_TEST_SEED");
    return env ? std::strtoull(env, nullptr, 10) : 0;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt) { return Rng(test_seed() * 1000003u + salt); }

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline diffcomp::Rational small_rational(Rng& rng) {
    diffcomp::Rational r(uniform(rng, -6, 6), uniform(rng, 1, 4));
    r.canonicalize();
    return r;
}

/// Random element of Q(w_m) with small numerators and denominators.
inline diffcomp::CycloRational random_cyclo(Rng& rng, std::uint64_t m) {
    std::vector<diffcomp::Rational> coeffs(diffcomp::euler_phi(m));
    for (auto& c : coeffs) c = small_rational(rng);
    return diffcomp::CycloRational::from_coefficients(m, coeffs);
}

/// Random polynomial with integer coefficients in [-3, 3] and exponents <= max_exp.
inline diffcomp::MultiPoly random_poly(Rng& rng, std::size_t nvars, std::size_t terms, std::uint32_t max_exp) {
    diffcomp::MultiPoly p(nvars);
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<diffcomp::Monomial::Factor> factors;
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto e = static_cast<std::uint32_t>(uniform(rng, 0, max_exp));
            if (e > 0) factors.emplace_back(static_cast<diffcomp::Var>(v), e);
        }
        p += diffcomp::MultiPoly::term(diffcomp::Monomial::from_factors(factors),
                                       diffcomp::CycloRational(uniform(rng, -3, 3)), nvars);
    }
    return p;
}

}  // namespace testing
