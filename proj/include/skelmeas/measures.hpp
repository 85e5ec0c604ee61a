#pragma once

#include "skelmeas/exact.hpp"
#include "skelmeas/model.hpp"
#include "skelmeas/skeleton.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skelmeas {

/// Integral volume of {sum N_j u_j = 1, u >= 0} for the lattice
/// {c_j u_j in Z}; gcd(N) / (d! prod N) when all c_j = 1. A vertex has
/// volume 1.
Rat face_volume(const std::vector<long>& N, const std::vector<long>& scale = {});
Rat face_volume(const Face& f);

/// Density (w.r.t. the integral Lebesgue measure) on each top face.
struct PolytopeMeasure {
    int dim = -1;
    std::map<std::size_t, Rat> density;
    Rat total(const DualComplex& dc) const;
};

PolytopeMeasure lebesgue_measure(const DualComplex& dc, const SubComplex& c);
/// Density tdeg on each top face.
PolytopeMeasure stable_measure(const DualComplex& dc, const SubComplex& c);

/// c0 + sum_j coeff[j] u_j, keyed by component index.
struct AffineFn {
    Rat constant = 0;
    std::map<std::size_t, Rat> coeff;
    Rat operator()(const Face& f, const std::vector<Rat>& u) const;
};

/// Piecewise affine function on the complex: per-face pieces with an
/// optional global affine fallback.
struct TestFunction {
    std::string name;
    std::optional<AffineFn> global;
    std::map<std::size_t, AffineFn> per_face;

    static TestFunction constant(const Rat& c);
    /// Barycentric hat N_j u_j of component j.
    static TestFunction hat(const DualComplex& dc, std::size_t component);

    Rat operator()(const DualComplex& dc, const SkPoint& x) const;
};

/// Mismatches on shared subfaces, checked at vertices and edge midpoints.
std::vector<std::string> check_consistency(const DualComplex& dc, const TestFunction& phi);

/// Constant 1 plus the hat function of every component.
std::vector<TestFunction> default_test_family(const DualComplex& dc);

std::vector<TestFunction> parse_test_functions(const DualComplex& dc, const std::string& text);
std::vector<TestFunction> load_test_functions(const DualComplex& dc, const std::string& path);

/// Exact for affine test functions (centroid rule).
Rat integrate(const DualComplex& dc, const PolytopeMeasure& mu, const TestFunction& phi);

struct DiscreteMeasure {
    std::vector<SkPoint> points;
    std::vector<Rat> masses;
    Rat total() const;
};

Rat integrate(const DualComplex& dc, const DiscreteMeasure& mu, const TestFunction& phi);

/// Mass e^-d at every (1/e)Z-point of the closed top faces of c, times
/// tdeg(x) for the stable variant.
DiscreteMeasure discrete_approximation(const DualComplex& dc, const SubComplex& c, long e, bool stable = false);

}  // namespace skelmeas
