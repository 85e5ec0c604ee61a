#pragma once

#include "skelmeas/basechange.hpp"
#include "skelmeas/exact.hpp"
#include "skelmeas/measures.hpp"
#include "skelmeas/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skelmeas {

// ---------------------------------------------------------------- weighted sums

/// Sum of phi(x) r^{-e f alpha(x)} over the (1/e)Z-points of a polytope,
/// alpha(x) = sum a_j (x_j - q_j) >= 0 on P. P is a box, or a face of a
/// model in its u-coordinates.
struct WeightedSumSpec {
    std::vector<std::string> variables;
    std::vector<std::pair<Rat, Rat>> box;  // empty for the face variant
    std::shared_ptr<const DualComplex> complex;
    std::size_t face = 0;
    std::vector<Rat> alpha;
    std::vector<Rat> offset;
    MPoly phi{0};
    Rat r = 2;
    std::optional<long> p;

    bool is_box() const { return complex == nullptr; }
    std::size_t arity() const { return alpha.size(); }
    Rat alpha_at(const std::vector<Rat>& x) const;
};

/// Checks arities, a finite nonempty P, r > 1 and alpha >= 0 on P.
void check_spec(const WeightedSumSpec& spec);
WeightedSumSpec parse_lemma_spec(const std::string& text, const std::string& base_dir = ".");
WeightedSumSpec load_lemma_spec(const std::string& path);
WeightedSumSpec box_spec(std::vector<std::pair<Rat, Rat>> box, std::vector<Rat> alpha, std::vector<Rat> offset,
                         const Rat& r, const std::string& phi = "1");

/// dim of tau = {alpha = 0} in P, -1 when empty.
int tau_dimension(const WeightedSumSpec& spec);

enum class SumRegion { all, off_tau };

/// e^-dim(tau) sum phi(x) r^{-e f alpha(x)} as a sum of powers of r.
QExpSum lemma_sum_bruteforce(const WeightedSumSpec& spec, long e, long f, SumRegion region = SumRegion::all);
/// Closed geometric-series form of the off-tau sum with phi = 1 on a box
/// whose constrained coordinates start at q_i.
QExpSum lemma_sum_closedform(const WeightedSumSpec& spec, long e, long f);
/// Integral of phi (degree <= 2) over tau for the integral Lebesgue measure.
Rat tau_integral(const WeightedSumSpec& spec);

// ---------------------------------------------------------------- simulation

enum class Normalization { ks, temperate, shilov };

struct SimulatedAtom {
    SkPoint point;
    Rat weight;
    long tdeg = 1;
    bool bounded = false;  // horizontal stratum: only [lo, hi] is known
    QExpSum raw_lo;
    QExpSum raw_hi;
    QExpSum normalized_lo;
    QExpSum normalized_hi;
};

struct SimulatedMeasure {
    Extension ext;
    long q = 2;
    Normalization normalization = Normalization::ks;
    int dim = -1;        // skeleton dimension used for e^-dim
    Rat ord_exponent;    // normalisation multiplies by q^{ord_exponent}
    std::vector<SimulatedAtom> atoms;
    QExpSum total_lo() const;
    QExpSum total_hi() const;
};

/// Pushforward of the normalized Haar measure on X(K'), |K'| residue field
/// of size q^f. Requires tame e or a log smooth model.
SimulatedMeasure simulate_measure(const DualComplex& dc, const Extension& ext, long q,
                                  Normalization norm = Normalization::ks);

/// Interval for |a - b| style distances.
struct Bound {
    Rat lo;
    Rat hi;
    bool exact() const { return lo == hi; }
    std::string to_string() const;
};

struct ConvergenceRow {
    Extension ext;
    std::vector<QValue> integrals;  // one per test function
    std::vector<Rat> targets;
    Bound distance;  // max over phi of |integral - target|
    int dim = -1;
};

enum class ConvergenceMode { tame, log_smooth, shilov };

/// D(e,f) for every (e,f) of the grid (or the zipped sequences).
std::vector<ConvergenceRow> convergence_report(const DualComplex& dc, const std::vector<long>& e_seq,
                                               const std::vector<long>& f_seq, long q,
                                               const std::vector<TestFunction>& family, ConvergenceMode mode,
                                               bool pairwise = false);

}  // namespace skelmeas
