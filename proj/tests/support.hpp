#pragma once

// Random instance generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "rankforge/ordinal.hpp"
#include "rankforge/perm_group.hpp"
#include "rankforge/zline.hpp"

namespace rftest {

using rankforge::Ordinal;
using rankforge::OrdinalTerm;
using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline std::int64_t uniform_signed(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Ordinal with at most `max_terms` terms whose exponents are drawn by `exp`.
template <class ExpGen>
Ordinal random_cnf(Rng& rng, std::uint64_t max_terms, std::uint64_t max_coef, ExpGen exp) {
    std::vector<Ordinal> exps;
    for (auto n = uniform(rng, 0, max_terms); n > 0; --n) exps.push_back(exp());
    std::sort(exps.begin(), exps.end(), std::greater<>());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<OrdinalTerm> terms;
    for (auto& e : exps) terms.push_back(OrdinalTerm{std::move(e), uniform(rng, 1, max_coef)});
    return Ordinal::from_terms(std::move(terms));
}

// Below omega^(omega^depth): exponents are themselves drawn below
// omega^(omega^(depth-1)), and depth 0 gives naturals below 6.
inline Ordinal random_ordinal(Rng& rng, int depth, std::uint64_t max_terms = 3, std::uint64_t max_coef = 4) {
    if (depth <= 0) return Ordinal(uniform(rng, 0, 5));
    return random_cnf(rng, max_terms, max_coef, [&] { return random_ordinal(rng, depth - 1, max_terms, max_coef); });
}

// Below omega^(omega^3): exponents are below omega^3, i.e. of the form
// w^2*a + w*b + c.
inline Ordinal random_below_w_w3(Rng& rng) {
    return random_cnf(rng, 4, 4, [&] {
        return random_cnf(rng, 3, 3, [&] { return Ordinal(uniform(rng, 0, 2)); });
    });
}

// Element with support drawn from `pool`, |support| <= max_support and
// values in [-c, c] \ {0}.
inline rankforge::ZElement random_element(Rng& rng, const std::vector<rankforge::Position>& pool,
                                          std::uint64_t max_support, std::int64_t c) {
    rankforge::ZElement a;
    for (auto n = uniform(rng, 0, max_support); n > 0; --n) {
        std::int64_t v = uniform_signed(rng, 1, c) * (uniform(rng, 0, 1) ? 1 : -1);
        a.set(pool[uniform(rng, 0, pool.size() - 1)], v);
    }
    return a;
}

// All subgroups of Sym(n) for n <= 4 would be too many to list by hand;
// instead a fixed catalogue of permutation groups covering every
// isomorphism type of order <= 8.
struct NamedGroup {
    const char* name;
    int degree;
    std::vector<rankforge::Perm> generators;
};

inline std::vector<NamedGroup> small_groups() {
    return {
        {"C1", 1, {}},
        {"C2", 2, {{1, 0}}},
        {"C3", 3, {{1, 2, 0}}},
        {"C4", 4, {{1, 2, 3, 0}}},
        {"C2xC2", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}},
        {"C5", 5, {{1, 2, 3, 4, 0}}},
        {"C6", 5, {{1, 2, 0, 3, 4}, {0, 1, 2, 4, 3}}},
        {"S3", 3, {{1, 0, 2}, {1, 2, 0}}},
        {"C7", 7, {{1, 2, 3, 4, 5, 6, 0}}},
        {"C8", 8, {{1, 2, 3, 4, 5, 6, 7, 0}}},
        {"C4xC2", 6, {{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}}},
        {"C2xC2xC2", 6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}}},
        {"D4", 4, {{1, 2, 3, 0}, {3, 2, 1, 0}}},
        {"Q8", 8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}}},
    };
}

}  // namespace rftest
