#include "skelmeas/measures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace skelmeas {

Rat face_volume(const std::vector<long>& N, const std::vector<long>& scale_in)
{
    if (N.empty()) throw std::invalid_argument("face_volume of an empty face");
    std::vector<long> scale = scale_in.empty() ? std::vector<long>(N.size(), 1) : scale_in;
    if (scale.size() != N.size()) throw std::invalid_argument("face_volume: scale arity mismatch");
    const std::size_t d = N.size() - 1;
    if (d == 0) return 1;
    // Substituting v_j = c_j u_j gives {sum (N_j/c_j) v_j = 1} in Z^J;
    // clear denominators to b_j = D N_j / c_j and rescale by D^d.
    Int D = 1;
    for (std::size_t j = 0; j < N.size(); ++j) {
        if (N[j] < 1 || scale[j] < 1) throw std::invalid_argument("face_volume: entries must be positive");
        D = lcm_i(D, make_rat(N[j], scale[j]).get_den());
    }
    Int g = 0;
    Int prod = 1;
    for (std::size_t j = 0; j < N.size(); ++j) {
        Rat bj = Rat(D) * make_rat(N[j], scale[j]);
        g = gcd_i(g, bj.get_num());
        prod *= bj.get_num();
    }
    Int fact = 1;
    for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<unsigned long>(k);
    return make_rat(ipow(D, d) * g, fact * prod);
}

Rat face_volume(const Face& f) { return face_volume(f.N, f.scale); }

Rat PolytopeMeasure::total(const DualComplex& dc) const
{
    Rat t = 0;
    for (const auto& [f, rho] : density) t += rho * face_volume(dc.face(f));
    return t;
}

namespace {

PolytopeMeasure build_measure(const DualComplex& dc, const SubComplex& c, bool stable)
{
    if (c.empty()) throw std::invalid_argument("measure on an empty complex");
    PolytopeMeasure mu;
    mu.dim = c.dim;
    for (std::size_t f : top_faces(dc, c)) mu.density[f] = stable ? Rat(dc.stratum(f).tdeg) : Rat(1);
    return mu;
}

}  // namespace

PolytopeMeasure lebesgue_measure(const DualComplex& dc, const SubComplex& c) { return build_measure(dc, c, false); }
PolytopeMeasure stable_measure(const DualComplex& dc, const SubComplex& c) { return build_measure(dc, c, true); }

Rat AffineFn::operator()(const Face& f, const std::vector<Rat>& u) const
{
    Rat v = constant;
    for (std::size_t k = 0; k < u.size(); ++k) {
        auto it = coeff.find(f.vertices[k]);
        if (it != coeff.end()) v += it->second * u[k];
    }
    return v;
}

TestFunction TestFunction::constant(const Rat& c)
{
    TestFunction t;
    t.name = "const_" + to_string(c);
    t.global = AffineFn{c, {}};
    return t;
}

TestFunction TestFunction::hat(const DualComplex& dc, std::size_t j)
{
    TestFunction t;
    t.name = "hat_" + dc.component(j).id;
    t.global = AffineFn{0, {{j, Rat(dc.component(j).multiplicity)}}};
    return t;
}

Rat TestFunction::operator()(const DualComplex& dc, const SkPoint& x_in) const
{
    SkPoint x = canonical_point(dc, x_in);
    if (auto it = per_face.find(x.face); it != per_face.end()) return it->second(dc.face(x.face), x.u);
    // A piece on a larger face restricts to this one.
    const Face& g = dc.face(x.face);
    for (const auto& [fi, fn] : per_face) {
        const Face& f = dc.face(fi);
        const auto& cl = dc.closure(fi);
        if (std::find(cl.begin(), cl.end(), x.face) == cl.end()) continue;
        std::vector<Rat> u(f.vertices.size(), Rat(0));
        for (std::size_t k = 0; k < g.vertices.size(); ++k) {
            auto pos = std::find(f.vertices.begin(), f.vertices.end(), g.vertices[k]) - f.vertices.begin();
            u[static_cast<std::size_t>(pos)] = x.u[k];
        }
        return fn(f, u);
    }
    if (global) return (*global)(g, x.u);
    throw std::invalid_argument("test function '" + name + "' is undefined on face " + g.label);
}

std::vector<std::string> check_consistency(const DualComplex& dc, const TestFunction& phi)
{
    std::vector<std::string> issues;
    for (const auto& [fi, fn] : phi.per_face) {
        const Face& f = dc.face(fi);
        const std::size_t k = f.vertices.size();
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a; b < k; ++b) {
                if (a == b && k == 1) continue;
                std::vector<Rat> u(k, Rat(0));
                if (a == b) {
                    u[a] = make_rat(1, f.N[a]);
                } else {
                    u[a] = make_rat(1, 2 * f.N[a]);
                    u[b] = make_rat(1, 2 * f.N[b]);
                }
                Rat own = fn(f, u);
                Rat shared = phi(dc, SkPoint{fi, u});
                if (own != shared)
                    issues.push_back(phi.name + ": face " + f.label + " gives " + to_string(own) + " at " +
                                     point_coords(dc, canonical_point(dc, SkPoint{fi, u})) + " but a neighbour gives " +
                                     to_string(shared));
            }
        }
    }
    return issues;
}

std::vector<TestFunction> default_test_family(const DualComplex& dc)
{
    std::vector<TestFunction> fam{TestFunction::constant(1)};
    for (std::size_t j = 0; j < dc.num_components(); ++j) fam.push_back(TestFunction::hat(dc, j));
    return fam;
}

Rat integrate(const DualComplex& dc, const PolytopeMeasure& mu, const TestFunction& phi)
{
    Rat acc = 0;
    for (const auto& [fi, rho] : mu.density) {
        const Face& f = dc.face(fi);
        const long d1 = f.dim + 1;
        SkPoint centroid{fi, {}};
        for (long Nj : f.N) centroid.u.push_back(make_rat(1, d1 * Nj));
        acc += rho * face_volume(f) * phi(dc, centroid);
    }
    return acc;
}

Rat DiscreteMeasure::total() const
{
    Rat t = 0;
    for (const auto& m : masses) t += m;
    return t;
}

Rat integrate(const DualComplex& dc, const DiscreteMeasure& mu, const TestFunction& phi)
{
    Rat acc = 0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) acc += mu.masses[i] * phi(dc, mu.points[i]);
    return acc;
}

DiscreteMeasure discrete_approximation(const DualComplex& dc, const SubComplex& c, long e, bool stable)
{
    if (c.empty()) throw std::invalid_argument("discrete approximation of an empty complex");
    SubComplex closed = close_downward(dc, top_faces(dc, c));
    Rat unit = rpow(Rat(e), -c.dim);
    DiscreteMeasure mu;
    for (auto& x : lattice_points(dc, closed, e)) {
        Rat m = stable ? unit * Rat(dc.stratum(x.face).tdeg) : unit;
        mu.points.push_back(std::move(x));
        mu.masses.push_back(m);
    }
    return mu;
}

}  // namespace skelmeas
