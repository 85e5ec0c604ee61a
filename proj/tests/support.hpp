#pragma once

// Fixtures, random generators and independent oracles shared by the tests.

#include "skelmeas/model.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace skelmeas::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long uniform(std::mt19937_64& g, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline Stratum stratum(std::vector<std::string> comps, std::vector<long> poly, long tdeg = 1)
{
    Stratum s;
    s.components = std::move(comps);
    s.count_poly = CountPoly::from_longs(poly);
    s.tdeg = tdeg;
    return s;
}

/// Two components of multiplicity 1 meeting nowhere: A (w=0, |E^o| = t+1)
/// and B (w=1, |E^o| = t).
inline SncModel two_component_model()
{
    SncModel m;
    m.name = "two_component";
    m.dimension = 1;
    m.components = {{"A", 1, 0, true, 1}, {"B", 1, 1, true, 1}};
    m.strata = {stratum({"A"}, {1, 1}), stratum({"B"}, {0, 1})};
    return m;
}

/// Three surfaces meeting along three curves and one triple point.
inline SncModel triangle_surface(long NA, long NB, long NC, long wA = 0, long wB = 0, long wC = 0)
{
    SncModel m;
    m.name = "triangle_surface";
    m.dimension = 2;
    m.components = {{"A", NA, wA, true, 1}, {"B", NB, wB, true, 1}, {"C", NC, wC, true, 1}};
    m.strata = {stratum({"A"}, {1, -2, 1}),   stratum({"B"}, {1, -2, 1}),   stratum({"C"}, {1, -2, 1}),
                stratum({"A", "B"}, {-1, 1}), stratum({"B", "C"}, {-1, 1}), stratum({"A", "C"}, {-1, 1}),
                stratum({"A", "B", "C"}, {1})};
    return m;
}

/// Random connected curve model: a random tree plus up to two extra edges,
/// P^1 components with |E^o| = t + 1 - degree.
inline SncModel random_curve_model(std::mt19937_64& g, long max_N = 6, long max_w = 4)
{
    SncModel m;
    m.name = "random_curve";
    m.dimension = 1;
    long k = uniform(g, 2, 6);
    for (long i = 0; i < k; ++i)
        m.components.push_back({"V" + std::to_string(i), uniform(g, 1, max_N), uniform(g, -max_w, max_w), true, 1});
    std::vector<std::pair<long, long>> edges;
    for (long i = 1; i < k; ++i) edges.emplace_back(uniform(g, 0, i - 1), i);
    long extra = uniform(g, 0, 2);
    for (long t = 0; t < extra; ++t) {
        long a = uniform(g, 0, k - 1);
        long b = uniform(g, 0, k - 1);
        if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<long> deg(static_cast<std::size_t>(k), 0);
    for (auto [a, b] : edges) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    for (long i = 0; i < k; ++i) m.strata.push_back(stratum({"V" + std::to_string(i)}, {1 - deg[static_cast<std::size_t>(i)], 1}));
    for (auto [a, b] : edges) m.strata.push_back(stratum({"V" + std::to_string(a), "V" + std::to_string(b)}, {1}));
    return m;
}

/// Number of a in Z_{>=0}^k with sum N_j a_j = e (closed simplex) or with
/// all a_j >= 1 (interior), by dynamic programming over the coins.
inline Int denumerant(const std::vector<long>& N, long e, bool interior = false)
{
    long target = e;
    if (interior)
        for (long n : N) target -= n;
    if (target < 0) return 0;
    std::vector<Int> ways(static_cast<std::size_t>(target) + 1, Int(0));
    ways[0] = 1;
    for (long n : N)
        for (long s = n; s <= target; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - n)];
    return ways[static_cast<std::size_t>(target)];
}

/// Circle x^2 + y^2 = 1 over F_q, q odd.
inline Int circle_count_oracle(const Int& q)
{
    Int half = (q - 1) / 2;
    return mpz_even_p(half.get_mpz_t()) ? Int(q - 1) : Int(q + 1);
}

/// Affine points of a polynomial over the prime field with plain modular
/// arithmetic (no field tables).
template <typename Fn>
long prime_field_count(long p, int nvars, Fn&& f)
{
    long count = 0;
    std::vector<long> x(static_cast<std::size_t>(nvars), 0);
    for (;;) {
        if (((f(x) % p) + p) % p == 0) ++count;
        int i = 0;
        while (i < nvars) {
            if (++x[static_cast<std::size_t>(i)] < p) break;
            x[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == nvars) return count;
    }
}

}  // namespace skelmeas::test
