// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include "skelmeas/basechange.hpp"
#include "skelmeas/convergence.hpp"
#include "skelmeas/langweil.hpp"
#include "skelmeas/measures.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace skelmeas;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first failure; later checks still run.
struct Checker {
    Outcome out;
    long checks = 0;
    void expect(bool cond, const std::string& what)
    {
        ++checks;
        if (!cond && out.ok) {
            out.ok = false;
            out.detail = what;
        }
    }
    Outcome done(const std::string& summary)
    {
        if (out.ok) out.detail = summary + " (" + std::to_string(checks) + " checks)";
        return out;
    }
};

Rat pow2_inv(long f) { return make_rat(Int(1), ipow(2, static_cast<unsigned long>(f))); }

Rat at_q(const QExpSum& s, long q)
{
    QValue v = qexp_eval(s, Rat(q));
    if (!v.exact) throw std::runtime_error("inexact evaluation of " + s.to_string());
    return v.lo;
}

std::vector<SncModel> fixtures()
{
    return {builtin_model("tate_triangle"),       builtin_model("kodaira_IV"),
            builtin_model("kodaira_In", 4),       builtin_model("kodaira_Istar", 0),
            builtin_model("kodaira_Istar", 2),    test::two_component_model(),
            test::triangle_surface(1, 2, 3, 0, -1, 2)};
}

SkPoint pull_back(const DualComplex& base, const DualComplex& ext, const BaseChangeResult& bc, const SkPoint& xp)
{
    const Face& fp = ext.face(xp.face);
    std::vector<std::pair<std::size_t, Rat>> coords;
    for (std::size_t k = 0; k < fp.vertices.size(); ++k) {
        std::size_t old_j = bc.component_origin[fp.vertices[k]];
        coords.emplace_back(old_j, xp.u[k] * Rat(fp.N[k]) / Rat(base.component(old_j).multiplicity));
    }
    std::sort(coords.begin(), coords.end());
    SkPoint x;
    x.face = bc.stratum_origin[xp.face];
    for (const auto& c : coords) x.u.push_back(c.second);
    return x;
}

Outcome edge_lengths()
{
    Checker c;
    for (long a = 1; a <= 50; ++a)
        for (long b = 1; b <= 50; ++b)
            c.expect(face_volume(std::vector<long>{a, b}) == make_rat(std::gcd(a, b), a * b),
                     "face_volume(" + std::to_string(a) + "," + std::to_string(b) + ")");
    DualComplex iv(builtin_model("kodaira_IV"));
    int edges = 0;
    for (const Face& f : iv.faces())
        if (f.dim == 1) {
            ++edges;
            c.expect(face_volume(f) == make_rat(1, 3), "kodaira_IV edge " + f.label + " is " + to_string(face_volume(f)));
        }
    c.expect(edges == 3, "kodaira_IV has 3 edges");
    return c.done("N <= 50 exact, IV edges 1/3");
}

Outcome base_change_rules()
{
    Checker c;
    for (long N = 1; N <= 60; ++N) {
        SncModel m;
        m.name = "single";
        m.components = {{"A", N, 1, true, 1}};
        m.strata = {test::stratum({"A"}, {2, 1})};
        for (long e = 1; e <= 60; ++e)
            c.expect(base_change(m, {e, 1}).components[0].multiplicity == N / std::gcd(e, N),
                     "N' for N=" + std::to_string(N) + " e=" + std::to_string(e));
    }
    for (const auto& m : fixtures()) {
        DualComplex base(m);
        for (long e = 1; e <= 12; ++e) {
            if (!is_tame(m, e)) continue;
            auto rep = lattice_correspondence_check(m, e);
            c.expect(rep.ok, m.name + " e=" + std::to_string(e) + ": " + rep.detail);
            auto bc = base_change_detailed(m, {e, 1});
            DualComplex ext(bc.model);
            for (const auto& xp : lattice_points(ext, full_complex(ext), 1))
                c.expect(weight_at(ext, xp) == Rat(e) * weight_at(base, pull_back(base, ext, bc, xp)),
                         m.name + " weight scaling at e=" + std::to_string(e));
        }
    }
    return c.done("N' exact for N,e <= 60; correspondence and wt' = e wt on fixtures, e <= 12");
}

Outcome volume_oracle()
{
    Checker c;
    auto g = test::rng(2024);
    const long e = 720;
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        long d = test::uniform(g, 1, 3);
        std::vector<long> N;
        for (long i = 0; i <= d; ++i) N.push_back(test::uniform(g, 1, 6));
        long gcd = 0;
        long prod = 1;
        for (long n : N) {
            gcd = std::gcd(gcd, n);
            prod *= n;
        }
        long fact = 1;
        for (long i = 2; i <= d; ++i) fact *= i;
        Rat vol = face_volume(N);
        c.expect(vol == make_rat(gcd, fact * prod), "closed form for simplex " + std::to_string(k));
        // Mean of closed and interior lattice counts; 720 is divisible by every gcd here.
        double count = Rat(Rat(test::denumerant(N, e) + test::denumerant(N, e, true)) / 2).get_d();
        double predicted = Rat(vol * Rat(ipow(e, static_cast<unsigned long>(d)))).get_d();
        double rel = std::abs(count - predicted) / predicted;
        worst = std::max(worst, rel);
        c.expect(rel <= 0.03, "simplex " + std::to_string(k) + " relative error " + std::to_string(rel));
    }
    std::ostringstream s;
    s << "20 simplices at e=720, worst relative error " << worst;
    return c.done(s.str());
}

Outcome lemma_checks()
{
    Checker c;
    std::vector<WeightedSumSpec> grid{
        box_spec({{0, 1}}, {Rat(1)}, {}, 2),
        box_spec({{0, 3}}, {make_rat(1, 2)}, {}, 3),
        box_spec({{make_rat(1, 3), 1}}, {Rat(2)}, {make_rat(1, 3)}, 2),
        box_spec({{0, 1}, {0, 2}}, {Rat(0), Rat(1)}, {}, 2),
        box_spec({{0, 1}, {make_rat(1, 2), 2}}, {Rat(1), make_rat(3, 2)}, {Rat(0), make_rat(1, 2)}, 5),
        box_spec({{0, 1}, {0, 1}, {0, 1}}, {Rat(1), Rat(0), Rat(2)}, {}, 2),
    };
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (long e = 1; e <= 12; ++e)
            for (long f = 1; f <= 12; ++f)
                c.expect(lemma_sum_closedform(grid[i], e, f) == lemma_sum_bruteforce(grid[i], e, f, SumRegion::off_tau),
                         "closed form spec " + std::to_string(i) + " e=" + std::to_string(e) + " f=" + std::to_string(f));

    // Same spec as models/lemma_tau.toml; documented (e0, f0) = (256, 24).
    auto s = box_spec({{0, 1}, {0, 1}}, {Rat(0), Rat(1)}, {}, 2, "1 + x1");
    double gap = std::abs(qexp_eval(lemma_sum_bruteforce(s, 256, 24), 2).approx() - tau_integral(s).get_d());
    c.expect(gap < 1e-2, "gap at (256, 24) is " + std::to_string(gap));

    auto none = box_spec({{make_rat(1, 3), 1}}, {Rat(1)}, {make_rat(1, 3)}, 2);
    none.p = 3;
    c.expect(tau_dimension(none) == 0, "tau of the no-point spec is the single point 1/3");
    double last = 1;
    for (long e : {1L, 2L, 4L, 5L, 8L, 16L, 32L, 64L}) {
        last = qexp_eval(lemma_sum_bruteforce(none, e, e), 2).approx();
        c.expect(last <= std::pow(2.0, -e / 3.0) / (1 - std::pow(2.0, -e)) * (1 + 1e-12),
                 "no-point tail bound at e=" + std::to_string(e));
    }
    c.expect(last < 1e-6, "no-point sum at e=f=64 is " + std::to_string(last));
    std::ostringstream out;
    out << "grid exact; gap " << gap << " at (256,24); no-point S(64,64) = " << last;
    return c.done(out.str());
}

Outcome tate_fixture()
{
    Checker c;
    DualComplex tate(builtin_model("tate_triangle"));
    c.expect(stable_measure(tate, full_complex(tate)).total(tate) == 3, "stable Lebesgue total is 3");
    for (long e = 1; e <= 20; ++e)
        for (long f = 1; f <= 20; ++f) {
            auto sim = simulate_measure(tate, {e, f}, 2);
            std::string at = " at e=" + std::to_string(e) + " f=" + std::to_string(f);
            c.expect(at_q(sim.total_hi(), 2) == 3 * (1 - pow2_inv(f)), "total" + at);
            Rat bound = 3 * pow2_inv(f) + make_rat(2, e);
            for (const Face& edge : tate.faces()) {
                if (edge.dim != 1) continue;
                const auto& cl = tate.closure(edge.index);
                Rat mass = 0;
                for (const auto& a : sim.atoms)
                    if (std::find(cl.begin(), cl.end(), a.point.face) != cl.end()) mass += at_q(a.normalized_hi, 2);
                c.expect(abs(Rat(mass - 1)) <= bound, "edge " + edge.label + " mass " + to_string(mass) + at);
            }
        }
    auto one = simulate_measure(tate, {1, 1}, 2);
    c.expect(one.atoms.size() == 3, "three atoms at e=f=1");
    for (const auto& a : one.atoms) c.expect(at_q(a.raw_hi, 2) == make_rat(1, 2), "atom mass 1/2 at e=f=1");
    c.expect(at_q(one.total_hi(), 2) == make_rat(3, 2), "total 3/2 at e=f=1");
    return c.done("totals 3(1-2^-f) for e,f <= 20; per-edge within 3*2^-f + 2/e; e=f=1 gives 3/2");
}

Outcome type_iv_fixture()
{
    Checker c;
    DualComplex iv(builtin_model("kodaira_IV", -1, {3, {}}));
    for (long e = 1; e <= 12; ++e) {
        auto sh = shilov_boundary(iv, e);
        std::string at = " at e=" + std::to_string(e);
        Rat expect = make_rat(1, 3) - make_rat(e / 3, e);
        c.expect(!sh.points.empty(), "Shilov points exist" + at);
        for (std::size_t i = 0; i < sh.points.size(); ++i)
            c.expect(sh.ks_distance[i] && *sh.ks_distance[i] == expect, "arclength" + at);
        c.expect(sh.ord_min_base && *sh.ord_min_base == make_rat(-(e / 3), e), "ord_min" + at);
        if (sh.tame) {
            auto rows = shilov_convergence(iv, {e}, {TestFunction::constant(1)});
            c.expect(rows[0].scaled_total == 3 && sh.total_mass() == 3, "mass 3" + at);
        }
    }
    return c.done("e = 1..12: arclength 1/3 - floor(e/3)/e, ord_min exact, tame mass 3");
}

Outcome temperate_parts()
{
    Checker c;
    for (long r = 0; r <= 6; ++r) {
        DualComplex is(builtin_model("kodaira_Istar", r, {2, {}}));
        SubComplex t = temperate_part(is, full_complex(is));
        std::set<std::string> edges;
        for (auto f : t.faces)
            if (is.face(f).dim == 1) edges.insert(is.face(f).label);
        std::string end = "C" + std::to_string(r);
        c.expect(edges == std::set<std::string>{"L1-C0", "L2-C0", "L3-" + end, "L4-" + end},
                 "I" + std::to_string(r) + "* temperate edges");
        c.expect(t == close_downward(is, top_faces(is, t)), "I" + std::to_string(r) + "* temperate part is the leaf edges' closure");
    }
    DualComplex iv(builtin_model("kodaira_IV", -1, {3, {}}));
    SubComplex empty = temperate_part(iv, ks_skeleton(iv));
    c.expect(empty.empty() && empty.dim == -1, "kodaira_IV temperate KS skeleton is empty");
    return c.done("I_r* (r <= 6, p=2) gives the 4 leaf edges; IV (p=3) empty, dim -1");
}

Outcome two_component_limit()
{
    Checker c;
    DualComplex two(test::two_component_model());
    for (long q : {2L, 3L, 5L})
        for (long f = 1; f <= 20; ++f) {
            auto sim = simulate_measure(two, {1, f}, q);
            Rat bound = 2 * make_rat(Int(1), ipow(q, static_cast<unsigned long>(f)));
            std::string at = " q=" + std::to_string(q) + " f=" + std::to_string(f);
            c.expect(sim.atoms.size() == 2, "two atoms" + at);
            c.expect(abs(Rat(at_q(sim.atoms[0].normalized_hi, q) - sim.atoms[0].tdeg)) <= bound, "mass of A" + at);
            c.expect(abs(at_q(sim.atoms[1].normalized_hi, q)) <= bound, "mass of B" + at);
        }
    return c.done("|error| <= 2 q^-f for q in {2,3,5}, f <= 20");
}

Outcome langweil_toy()
{
    Checker c;
    auto circle = make_variety({"x^2 + y^2 - 1"});
    auto seq = langweil_sequence(circle, 3, 1, 6);
    c.expect(seq.size() == 6, "six rows");
    for (const auto& row : seq)
        c.expect(row.count == test::circle_count_oracle(row.q_m), "circle count over F_" + to_string(row.q_m));
    c.expect(langweil_limit_check(seq, 1, 2), "limit check c_Z=1, C=2");
    return c.done("F_{3^m}, m <= 6, matches q - (-1)^((q-1)/2); limit check holds");
}

Outcome measure_scaling()
{
    Checker c;
    auto models = fixtures();
    auto g = test::rng(31);
    for (int k = 0; k < 40; ++k) {
        SncModel m = test::random_curve_model(g);
        for (auto& s : m.strata)
            if (s.components.size() == 2) {
                long t = test::uniform(g, 1, 3);
                s.tdeg = t;
                s.count_poly = CountPoly::from_longs({t});
            }
        models.push_back(m);
    }
    for (const auto& m : models) {
        DualComplex dc(m);
        auto plain = lebesgue_measure(dc, full_complex(dc));
        auto stable = stable_measure(dc, full_complex(dc));
        for (const auto& [face, dens] : plain.density)
            c.expect(stable.density.at(face) >= dens, m.name + " stable >= plain on " + dc.face(face).label);
        for (long e = 1; e <= 12; ++e) {
            if (!is_tame(m, e)) continue;
            auto bc = base_change_detailed(m, {e, 1});
            DualComplex ext(bc.model);
            auto plain_ext = lebesgue_measure(ext, full_complex(ext));
            Rat scale = Rat(ipow(e, static_cast<unsigned long>(plain.dim)));
            for (const auto& [face, dens] : plain_ext.density) {
                std::size_t origin = bc.stratum_origin[face];
                Rat pushed = dens * face_volume(ext.face(face));
                Rat base = plain.density.at(origin) * face_volume(dc.face(origin));
                c.expect(pushed == scale * base, m.name + " pushforward on " + ext.face(face).label);
            }
        }
    }
    return c.done("stable >= plain on 47 models; lambda' = e^d lambda face by face for tame e <= 12");
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria{
        {1, "edge lengths", 1, edge_lengths},
        {2, "base change", 5, base_change_rules},
        {3, "volume oracle", 60, volume_oracle},
        {4, "weighted sum lemma", 30, lemma_checks},
        {5, "tate fixture", 10, tate_fixture},
        {6, "type IV fixture", 5, type_iv_fixture},
        {7, "temperate parts", 1, temperate_parts},
        {8, "two-component limit", 5, two_component_limit},
        {9, "lang-weil toy", 60, langweil_toy},
        {10, "measure inequalities and scaling", 1, measure_scaling},
    };
    // Optional arguments select criteria by number.
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failures = 0;
    int ran = 0;
    for (const auto& cr : criteria) {
        if (!only.empty() && !only.count(cr.id)) continue;
        ++ran;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = cr.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.ok && secs > cr.budget_s) {
            out.ok = false;
            out.detail = "over the " + std::to_string(cr.budget_s) + " s budget";
        }
        if (!out.ok) ++failures;
        std::printf("[%s] %2d %-34s %8.3f s  %s\n", out.ok ? "PASS" : "FAIL", cr.id, cr.name, secs, out.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
