#include "skelmeas/convergence.hpp"

#include "skelmeas/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace skelmeas {

QExpSum SimulatedMeasure::total_lo() const
{
    QExpSum t;
    for (const auto& a : atoms) t += a.normalized_lo;
    return t;
}

QExpSum SimulatedMeasure::total_hi() const
{
    QExpSum t;
    for (const auto& a : atoms) t += a.normalized_hi;
    return t;
}

namespace {

void check_q(const SncModel& m, long q)
{
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    long base = m.p;
    if (base == 1) {
        for (long d = 2; d <= q; ++d)
            if (q % d == 0) {
                base = d;
                break;
            }
    }
    long rest = q;
    while (rest % base == 0) rest /= base;
    if (rest != 1)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a power of " +
                                    (m.p == 1 ? std::string("a prime") : "p = " + std::to_string(m.p)));
}

}  // namespace

SimulatedMeasure simulate_measure(const DualComplex& dc, const Extension& ext, long q, Normalization norm)
{
    const SncModel& model = dc.model();
    if (ext.e < 1 || ext.f < 1) throw std::invalid_argument("extension degrees must be >= 1");
    if (!model.log_smooth && !is_tame(model, ext.e))
        throw std::domain_error("wild extension (p divides e) on a model that is not log smooth");
    check_q(model, q);

    SimulatedMeasure out;
    out.ext = ext;
    out.q = q;
    out.normalization = norm;
    const long e = ext.e;
    const long f = ext.f;
    const int n = model.dimension;
    const Int t = ipow(Int(q), static_cast<unsigned long>(f));

    SubComplex ks = ks_skeleton(dc);
    Rat ord;
    switch (norm) {
    case Normalization::ks:
        out.dim = ks.dim;
        ord = min_weight(dc) * Rat(e);
        break;
    case Normalization::temperate:
        out.dim = temperate_part(dc, ks).dim;
        ord = min_weight(dc) * Rat(e);
        break;
    case Normalization::shilov: {
        out.dim = 0;
        auto sh = shilov_boundary(dc, e);
        ord = sh.ord_min_ext.value_or(Rat(0));
        break;
    }
    }
    out.ord_exponent = ord * Rat(f);
    QExpSum factor = QExpSum::monomial(rpow(Rat(e), -out.dim), out.ord_exponent);

    for (auto& x : lattice_points(dc, full_complex(dc), e)) {
        const Stratum& st = dc.stratum(x.face);
        const int face_dim = dc.face(x.face).dim;
        Int count = eval_count_poly(CountPoly::t_minus_one_pow(static_cast<unsigned>(face_dim)) * st.count_poly, t);
        if (count < 0)
            throw std::domain_error("count polynomial of stratum " + dc.face(x.face).label + " is negative at t = " +
                                    t.get_str());
        SimulatedAtom a;
        a.weight = weight_at(dc, x);
        a.tdeg = st.tdeg;
        a.bounded = st.horizontal;
        a.raw_hi = QExpSum::monomial(Rat(count), -Rat(f) * (Rat(e) * a.weight + Rat(n)));
        if (!a.bounded) a.raw_lo = a.raw_hi;
        a.normalized_lo = a.raw_lo * factor;
        a.normalized_hi = a.raw_hi * factor;
        a.point = std::move(x);
        out.atoms.push_back(std::move(a));
    }
    return out;
}

std::string Bound::to_string() const
{
    if (exact()) return skelmeas::to_string(lo);
    return "[" + to_decimal(lo) + ", " + to_decimal(hi) + "]";
}

namespace {

// Enclosure of |v| for an enclosure [lo, hi] of v.
Bound abs_bound(const Rat& lo, const Rat& hi)
{
    if (lo >= 0) return {lo, hi};
    if (hi <= 0) return {-hi, -lo};
    return {Rat(0), std::max(Rat(-lo), hi)};
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const DualComplex& dc, const std::vector<long>& e_seq,
                                               const std::vector<long>& f_seq, long q,
                                               const std::vector<TestFunction>& family, ConvergenceMode mode,
                                               bool pairwise)
{
    std::vector<Extension> grid;
    if (pairwise) {
        if (e_seq.size() != f_seq.size()) throw std::invalid_argument("pairwise sequences differ in length");
        for (std::size_t i = 0; i < e_seq.size(); ++i) grid.push_back({e_seq[i], f_seq[i]});
    } else {
        for (long e : e_seq)
            for (long f : f_seq) grid.push_back({e, f});
    }
    for (const auto& phi : family)
        if (auto issues = check_consistency(dc, phi); !issues.empty()) throw std::invalid_argument(issues.front());

    SubComplex ks = ks_skeleton(dc);
    SubComplex target_complex = mode == ConvergenceMode::tame ? temperate_part(dc, ks) : ks;
    std::vector<Rat> fixed_targets(family.size(), Rat(0));
    if (mode != ConvergenceMode::shilov && !target_complex.empty()) {
        PolytopeMeasure mu = stable_measure(dc, target_complex);
        for (std::size_t k = 0; k < family.size(); ++k) fixed_targets[k] = integrate(dc, mu, family[k]);
    }
    Normalization norm = mode == ConvergenceMode::tame     ? Normalization::temperate
                         : mode == ConvergenceMode::shilov ? Normalization::shilov
                                                           : Normalization::ks;

    return parallel_map(grid.size(), [&](std::size_t gi) {
        const Extension& ext = grid[gi];
        SimulatedMeasure sim = simulate_measure(dc, ext, q, norm);
        ConvergenceRow row;
        row.ext = ext;
        row.dim = sim.dim;
        row.targets = fixed_targets;
        if (mode == ConvergenceMode::shilov) {
            ShilovResult sh = shilov_boundary(dc, ext.e);
            DiscreteMeasure mu;
            for (std::size_t i = 0; i < sh.points.size(); ++i) {
                mu.points.push_back(sh.points[i]);
                mu.masses.push_back(Rat(sh.tdeg[i]));
            }
            for (std::size_t k = 0; k < family.size(); ++k) row.targets[k] = integrate(dc, mu, family[k]);
        }
        row.distance = {Rat(0), Rat(0)};
        const Rat qr(q);
        for (std::size_t k = 0; k < family.size(); ++k) {
            QExpSum lo;
            QExpSum hi;
            for (const auto& a : sim.atoms) {
                Rat v = family[k](dc, a.point);
                // A negative test value swaps the ends of a bounded mass.
                lo += (v >= 0 ? a.normalized_lo : a.normalized_hi).scaled(v);
                hi += (v >= 0 ? a.normalized_hi : a.normalized_lo).scaled(v);
            }
            QValue vlo = qexp_eval(lo, qr);
            QValue vhi = qexp_eval(hi, qr);
            QValue integral{vlo.exact && vhi.exact && vlo.lo == vhi.hi, vlo.lo, vhi.hi};
            row.integrals.push_back(integral);
            Bound d = abs_bound(integral.lo - row.targets[k], integral.hi - row.targets[k]);
            row.distance.lo = std::max(row.distance.lo, d.lo);
            row.distance.hi = std::max(row.distance.hi, d.hi);
        }
        return row;
    });
}

}  // namespace skelmeas
