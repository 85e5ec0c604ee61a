#include "skelmeas/skeleton.hpp"

#include "skelmeas/measures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace skelmeas {

bool SubComplex::contains(std::size_t face) const
{
    return std::find(faces.begin(), faces.end(), face) != faces.end();
}

SubComplex close_downward(const DualComplex& dc, const std::vector<std::size_t>& faces)
{
    std::set<std::size_t> all;
    for (std::size_t f : faces)
        for (std::size_t s : dc.closure(f)) all.insert(s);
    SubComplex c;
    c.faces.assign(all.begin(), all.end());
    std::sort(c.faces.begin(), c.faces.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(dc.face(a).dim, a) < std::pair(dc.face(b).dim, b);
    });
    for (std::size_t f : c.faces) c.dim = std::max(c.dim, dc.face(f).dim);
    return c;
}

SubComplex full_complex(const DualComplex& dc)
{
    std::vector<std::size_t> all(dc.faces().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return close_downward(dc, all);
}

std::vector<std::size_t> top_faces(const DualComplex& dc, const SubComplex& c)
{
    std::vector<std::size_t> out;
    for (std::size_t f : c.faces)
        if (dc.face(f).dim == c.dim) out.push_back(f);
    return out;
}

SkPoint canonical_point(const DualComplex& dc, const SkPoint& x)
{
    const Face& f = dc.face(x.face);
    if (x.u.size() != f.vertices.size()) throw std::invalid_argument("point arity does not match its face");
    std::vector<std::size_t> verts;
    std::vector<Rat> u;
    for (std::size_t k = 0; k < x.u.size(); ++k) {
        if (x.u[k] < 0) throw std::invalid_argument("negative point coordinate");
        if (x.u[k] != 0) {
            verts.push_back(f.vertices[k]);
            u.push_back(x.u[k]);
        }
    }
    if (verts.empty()) throw std::invalid_argument("point has no positive coordinate");
    return SkPoint{dc.subface(x.face, verts), u};
}

std::string point_coords(const DualComplex& dc, const SkPoint& x)
{
    const Face& f = dc.face(x.face);
    std::string out;
    for (std::size_t k = 0; k < x.u.size(); ++k) {
        if (!out.empty()) out += ";";
        out += dc.component(f.vertices[k]).id + "=" + to_string(x.u[k]);
    }
    return out;
}

Rat weight_at(const DualComplex& dc, const SkPoint& x)
{
    const Face& f = dc.face(x.face);
    if (x.u.size() != f.vertices.size()) throw std::invalid_argument("point arity does not match its face");
    Rat acc = 0;
    for (std::size_t k = 0; k < x.u.size(); ++k) acc += Rat(dc.component(f.vertices[k]).theta_order) * x.u[k];
    return acc / Rat(dc.model().m);
}

Rat vertex_weight(const DualComplex& dc, std::size_t j)
{
    const Component& c = dc.component(j);
    return make_rat(c.theta_order, dc.model().m * c.multiplicity);
}

Rat min_weight(const DualComplex& dc)
{
    Rat best = vertex_weight(dc, 0);
    for (std::size_t j = 1; j < dc.num_components(); ++j) best = std::min(best, vertex_weight(dc, j));
    return best;
}

SubComplex ks_skeleton(const DualComplex& dc)
{
    Rat wmin = min_weight(dc);
    std::vector<std::size_t> essential;
    for (const Face& f : dc.faces()) {
        if (dc.stratum(f.index).horizontal) continue;
        bool all_min = std::all_of(f.vertices.begin(), f.vertices.end(),
                                   [&](std::size_t j) { return vertex_weight(dc, j) == wmin; });
        if (all_min) essential.push_back(f.index);
    }
    return close_downward(dc, essential);
}

Int root_index(const std::vector<long>& N, const std::vector<long>& scale)
{
    if (N.size() != scale.size() || N.empty()) throw std::invalid_argument("root_index: bad face data");
    // The character group is Z^J + Z*a with a_j = N_j / c_j; the root index
    // is the divisibility of a there.
    Int gp = 0;
    Int lq = 1;
    for (std::size_t j = 0; j < N.size(); ++j) {
        Rat a = make_rat(N[j], scale[j]);
        gp = gcd_i(gp, a.get_num());
        lq = lcm_i(lq, a.get_den());
    }
    Rat tau = make_rat(lq, gp);
    return tau.get_den();
}

Int root_index(const Face& f) { return root_index(f.N, f.scale); }

namespace {

void enumerate(const std::vector<long>& b, std::size_t k, long remaining, std::vector<long>& a,
               std::vector<std::vector<long>>& out)
{
    if (k + 1 == b.size()) {
        if (remaining >= b[k] && remaining % b[k] == 0) {
            a[k] = remaining / b[k];
            out.push_back(a);
        }
        return;
    }
    long rest_min = 0;
    for (std::size_t j = k + 1; j < b.size(); ++j) rest_min += b[j];
    for (long v = 1; b[k] * v + rest_min <= remaining; ++v) {
        a[k] = v;
        enumerate(b, k + 1, remaining - b[k] * v, a, out);
    }
}

}  // namespace

std::vector<SkPoint> face_interior_points(const DualComplex& dc, std::size_t face, long e)
{
    if (e < 1) throw std::invalid_argument("lattice level e must be >= 1");
    const Face& f = dc.face(face);
    // u_j = a_j / (e c_j) with a_j >= 1 and sum (N_j L / c_j) a_j = e L.
    long L = 1;
    for (long c : f.scale) L = lcm_l(L, c);
    std::vector<long> b;
    for (std::size_t k = 0; k < f.N.size(); ++k) b.push_back(f.N[k] * (L / f.scale[k]));
    std::vector<std::vector<long>> sols;
    std::vector<long> a(b.size(), 0);
    enumerate(b, 0, e * L, a, sols);
    std::vector<SkPoint> pts;
    pts.reserve(sols.size());
    for (const auto& s : sols) {
        SkPoint x{face, {}};
        for (std::size_t k = 0; k < s.size(); ++k) x.u.push_back(make_rat(s[k], e * f.scale[k]));
        pts.push_back(std::move(x));
    }
    return pts;
}

std::vector<SkPoint> lattice_points(const DualComplex& dc, const SubComplex& c, long e)
{
    std::vector<SkPoint> out;
    for (std::size_t f : c.faces) {
        auto pts = face_interior_points(dc, f, e);
        out.insert(out.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
    }
    return out;
}

bool is_Zp_integral(const DualComplex& dc, const SkPoint& x, long p)
{
    if (p == 1) return true;
    const Face& f = dc.face(x.face);
    for (std::size_t k = 0; k < x.u.size(); ++k) {
        Rat v = x.u[k] * Rat(f.scale[k]);
        if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    return true;
}

SubComplex temperate_part(const DualComplex& dc, const SubComplex& base)
{
    const long p = dc.model().p;
    std::vector<std::size_t> keep;
    for (std::size_t fi : base.faces) {
        const Face& f = dc.face(fi);
        if (p != 1 && mpz_divisible_ui_p(root_index(f).get_mpz_t(), static_cast<unsigned long>(p))) continue;
        bool separable = std::all_of(f.vertices.begin(), f.vertices.end(),
                                     [&](std::size_t j) { return dc.component(j).separable; });
        if (separable) keep.push_back(fi);
    }
    return close_downward(dc, keep);
}

long tame_degree(const DualComplex& dc, const SkPoint& x)
{
    return dc.stratum(canonical_point(dc, x).face).tdeg;
}

Rat edge_distance_from_vertex(const DualComplex& dc, const SkPoint& x, std::size_t component)
{
    const Face& f = dc.face(x.face);
    if (f.dim > 1) throw std::invalid_argument("edge distance needs a point on a vertex or an edge");
    auto it = std::find(f.vertices.begin(), f.vertices.end(), component);
    if (f.dim == 0) {
        if (it == f.vertices.end()) throw std::invalid_argument("vertex is not the given component");
        return 0;
    }
    if (it == f.vertices.end()) throw std::invalid_argument("component is not a vertex of the edge");
    std::size_t k = static_cast<std::size_t>(it - f.vertices.begin());
    Rat lambda = Rat(f.N[k]) * x.u[k];
    return (Rat(1) - lambda) * face_volume(f.N, f.scale);
}

}  // namespace skelmeas
