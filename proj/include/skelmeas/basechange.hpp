#pragma once

#include "skelmeas/measures.hpp"
#include "skelmeas/model.hpp"
#include "skelmeas/skeleton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skelmeas {

/// Finite extension K'/K with ramification index e and residue degree f.
struct Extension {
    long e = 1;
    long f = 1;
};

bool is_tame(const SncModel& model, long e);

struct BaseChangeResult {
    SncModel model;
    std::vector<std::size_t> stratum_origin;    // new stratum -> old stratum
    std::vector<std::size_t> component_origin;  // new component -> old component
};

/// Normalized base change. N' = N/gcd(e,N), w' = e w N'/N, lattice
/// scales pick up e/gcd(e,N). Strata with split_degree | f split into
/// tdeg rational copies. Wild e is rejected unless the model is log smooth.
BaseChangeResult base_change_detailed(const SncModel& model, const Extension& ext);
SncModel base_change(const SncModel& model, const Extension& ext);

struct CorrespondenceReport {
    bool ok = false;
    std::size_t base_points = 0;       // (1/e)Z-points of the model
    std::size_t extension_points = 0;  // Z-points of the base change
    std::string detail;
};

/// Compares lattice_points(base_change(model,(e,1)), 1) with
/// lattice_points(model, e) through the coordinate rescaling.
CorrespondenceReport lattice_correspondence_check(const SncModel& model, long e);

struct ShilovResult {
    long e = 1;
    bool tame = true;
    std::vector<SkPoint> points;
    std::vector<Rat> weights;
    std::vector<long> tdeg;
    /// Lattice distance to the nearest Kontsevich-Soibelman vertex along the
    /// point's edge (or an adjacent edge, for a vertex); unset otherwise.
    std::vector<std::optional<Rat>> ks_distance;
    std::optional<Rat> ord_min_base;  // nullopt encodes -infinity (empty)
    std::optional<Rat> ord_min_ext;   // e * ord_min_base
    long total_mass() const;
};

/// Argmin of the weight over the (1/e)Z-points of the whole complex, as
/// seen from K' with [K':K] = e. Computed for every e; `tame` records
/// whether e is prime to p.
ShilovResult shilov_boundary(const DualComplex& dc, long e);

enum class SkeletonTarget { ks, temperate };

struct ShilovConvergenceRow {
    long e = 1;
    int dim = -1;
    Rat scaled_total;
    std::vector<Rat> integrals;  // one per test function
    std::vector<Rat> targets;
    Rat distance;  // max |integral - target|
};

/// Shilov measures sum tdeg delta_x scaled by e^-dim compared with the
/// stable Lebesgue measure of the chosen skeleton (zero when empty).
std::vector<ShilovConvergenceRow> shilov_convergence(const DualComplex& dc, const std::vector<long>& e_list,
                                                     const std::vector<TestFunction>& family,
                                                     SkeletonTarget target = SkeletonTarget::ks);

}  // namespace skelmeas
