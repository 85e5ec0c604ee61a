#include "skelmeas/basechange.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace skelmeas {

bool is_tame(const SncModel& model, long e) { return model.p == 1 || e % model.p != 0; }

namespace {

bool strictly_contained(const std::vector<std::string>& small, const std::vector<std::string>& big)
{
    if (small.size() >= big.size()) return false;
    return std::all_of(small.begin(), small.end(),
                       [&](const std::string& id) { return std::find(big.begin(), big.end(), id) != big.end(); });
}

}  // namespace

BaseChangeResult base_change_detailed(const SncModel& model, const Extension& ext)
{
    if (ext.e < 1 || ext.f < 1) throw std::invalid_argument("extension degrees must be >= 1");
    if (auto v = validate(model); !v.empty()) throw ValidationError(v);
    if (!model.log_smooth && !is_tame(model, ext.e))
        throw std::domain_error("wild extension: p = " + std::to_string(model.p) + " divides e = " +
                                std::to_string(ext.e) + " and the model is not log smooth");

    const long e = ext.e;
    const long f = ext.f;
    auto splits = [&](const Stratum& s) { return s.tdeg > 1 && f % s.split_degree == 0; };
    auto maximal = [&](std::size_t i) {
        for (std::size_t k = 0; k < model.strata.size(); ++k)
            if (k != i && strictly_contained(model.strata[i].components, model.strata[k].components)) return false;
        return true;
    };

    // Components whose own stratum splits become several components.
    std::map<std::string, long> component_copies;
    for (std::size_t i = 0; i < model.strata.size(); ++i) {
        const Stratum& s = model.strata[i];
        if (!splits(s)) continue;
        if (!maximal(i))
            throw std::domain_error("stratum {" + s.components.front() +
                                    (s.components.size() > 1 ? ",..." : "") + "} splits but is not a maximal face");
        if (s.components.size() == 1) component_copies[s.components.front()] = s.tdeg;
    }

    BaseChangeResult out;
    SncModel& m = out.model;
    m.name = model.name;
    m.dimension = model.dimension;
    m.p = model.p;
    if (model.q) m.q = static_cast<long>(ipow(Int(*model.q), static_cast<unsigned long>(f)).get_si());
    m.m = model.m;
    m.log_smooth = model.log_smooth;

    for (std::size_t j = 0; j < model.components.size(); ++j) {
        const Component& c = model.components[j];
        long g = gcd_l(e, c.multiplicity);
        Component nc = c;
        nc.multiplicity = c.multiplicity / g;
        nc.theta_order = e / g * c.theta_order;
        nc.lattice_scale = c.lattice_scale * (e / g);
        auto it = component_copies.find(c.id);
        long copies = it == component_copies.end() ? 1 : it->second;
        for (long k = 1; k <= copies; ++k) {
            if (copies > 1) nc.id = c.id + "~" + std::to_string(k);
            m.components.push_back(nc);
            out.component_origin.push_back(j);
        }
    }

    for (std::size_t i = 0; i < model.strata.size(); ++i) {
        const Stratum& s = model.strata[i];
        if (!splits(s)) {
            Stratum ns = s;
            ns.split_degree = s.split_degree / gcd_l(s.split_degree, f);
            m.strata.push_back(ns);
            out.stratum_origin.push_back(i);
            continue;
        }
        Stratum piece = s;
        piece.count_poly = s.count_poly.divided_by(Int(s.tdeg));
        piece.tdeg = 1;
        piece.split_degree = 1;
        for (long k = 1; k <= s.tdeg; ++k) {
            if (s.components.size() == 1) piece.components = {s.components.front() + "~" + std::to_string(k)};
            m.strata.push_back(piece);
            out.stratum_origin.push_back(i);
        }
    }
    if (auto v = validate(m); !v.empty()) throw ValidationError(v);
    return out;
}

SncModel base_change(const SncModel& model, const Extension& ext) { return base_change_detailed(model, ext).model; }

CorrespondenceReport lattice_correspondence_check(const SncModel& model, long e)
{
    CorrespondenceReport rep;
    DualComplex base(model);
    BaseChangeResult bc = base_change_detailed(model, Extension{e, 1});
    DualComplex ext(bc.model);

    auto base_pts = lattice_points(base, full_complex(base), e);
    auto ext_pts = lattice_points(ext, full_complex(ext), 1);
    rep.base_points = base_pts.size();
    rep.extension_points = ext_pts.size();

    std::map<std::pair<std::size_t, std::vector<Rat>>, long> fibre_tdeg;
    for (const auto& x : base_pts) fibre_tdeg[{x.face, x.u}] = 0;

    for (const auto& xp : ext_pts) {
        const Face& fp = ext.face(xp.face);
        std::size_t origin = bc.stratum_origin[xp.face];
        const Face& f = base.face(origin);
        // Old coordinates: u_j = u'_j N'_j / N_j, vertices matched by origin.
        std::vector<std::pair<std::size_t, Rat>> coords;
        for (std::size_t k = 0; k < fp.vertices.size(); ++k) {
            std::size_t old_j = bc.component_origin[fp.vertices[k]];
            coords.emplace_back(old_j, xp.u[k] * make_rat(fp.N[k], base.component(old_j).multiplicity));
        }
        std::sort(coords.begin(), coords.end());
        std::vector<Rat> u;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (coords[k].first != f.vertices[k]) {
                rep.detail = "vertex mismatch on face " + fp.label;
                return rep;
            }
            u.push_back(coords[k].second);
        }
        auto it = fibre_tdeg.find({origin, u});
        if (it == fibre_tdeg.end()) {
            rep.detail = "point " + point_coords(ext, xp) + " on " + fp.label + " has no partner";
            return rep;
        }
        it->second += ext.stratum(xp.face).tdeg;
    }
    for (const auto& x : base_pts) {
        long got = fibre_tdeg[{x.face, x.u}];
        if (got != base.stratum(x.face).tdeg) {
            rep.detail = "point " + point_coords(base, x) + " has fibre tdeg " + std::to_string(got) + ", expected " +
                         std::to_string(base.stratum(x.face).tdeg);
            return rep;
        }
    }
    rep.ok = true;
    rep.detail = "ok";
    return rep;
}

long ShilovResult::total_mass() const
{
    long t = 0;
    for (long d : tdeg) t += d;
    return t;
}

ShilovResult shilov_boundary(const DualComplex& dc, long e)
{
    if (e < 1) throw std::invalid_argument("e must be >= 1");
    ShilovResult r;
    r.e = e;
    r.tame = is_tame(dc.model(), e);
    auto pts = lattice_points(dc, full_complex(dc), e);
    if (pts.empty()) return r;
    std::vector<Rat> wts;
    wts.reserve(pts.size());
    for (const auto& x : pts) wts.push_back(weight_at(dc, x));
    Rat best = *std::min_element(wts.begin(), wts.end());
    SubComplex ks = ks_skeleton(dc);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (wts[i] != best) continue;
        const SkPoint& x = pts[i];
        r.points.push_back(x);
        r.weights.push_back(wts[i]);
        r.tdeg.push_back(dc.stratum(x.face).tdeg);
        std::optional<Rat> dist;
        const Face& f = dc.face(x.face);
        if (f.dim <= 1) {
            for (std::size_t j : f.vertices) {
                if (!ks.contains(dc.vertex_face(j))) continue;
                Rat d = edge_distance_from_vertex(dc, x, j);
                if (!dist || d < *dist) dist = d;
            }
        }
        if (f.dim == 0 && !dist) {
            // A vertex off the skeleton: go along an edge to a skeleton vertex.
            for (const Face& g : dc.faces()) {
                if (g.dim != 1 || (g.vertices[0] != f.vertices[0] && g.vertices[1] != f.vertices[0])) continue;
                std::size_t other = g.vertices[0] == f.vertices[0] ? g.vertices[1] : g.vertices[0];
                if (!ks.contains(dc.vertex_face(other))) continue;
                Rat d = face_volume(g);
                if (!dist || d < *dist) dist = d;
            }
        }
        r.ks_distance.push_back(dist);
    }
    r.ord_min_base = best;
    r.ord_min_ext = best * Rat(e);
    return r;
}

std::vector<ShilovConvergenceRow> shilov_convergence(const DualComplex& dc, const std::vector<long>& e_list,
                                                     const std::vector<TestFunction>& family, SkeletonTarget target)
{
    SubComplex ks = ks_skeleton(dc);
    SubComplex sk = target == SkeletonTarget::ks ? ks : temperate_part(dc, ks);
    std::vector<Rat> targets;
    if (!sk.empty()) {
        PolytopeMeasure mu = stable_measure(dc, sk);
        for (const auto& phi : family) targets.push_back(integrate(dc, mu, phi));
    } else {
        targets.assign(family.size(), Rat(0));
    }
    std::vector<ShilovConvergenceRow> rows;
    for (long e : e_list) {
        ShilovResult sh = shilov_boundary(dc, e);
        ShilovConvergenceRow row;
        row.e = e;
        row.dim = sk.dim;
        Rat scale = rpow(Rat(e), -sk.dim);
        DiscreteMeasure nu;
        for (std::size_t i = 0; i < sh.points.size(); ++i) {
            nu.points.push_back(sh.points[i]);
            nu.masses.push_back(Rat(sh.tdeg[i]) * scale);
        }
        row.scaled_total = nu.total();
        row.targets = targets;
        row.distance = 0;
        for (std::size_t k = 0; k < family.size(); ++k) {
            Rat v = integrate(dc, nu, family[k]);
            row.integrals.push_back(v);
            row.distance = std::max(row.distance, Rat(abs(v - targets[k])));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace skelmeas
