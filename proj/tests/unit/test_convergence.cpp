#include <doctest.h>

#include "skelmeas/convergence.hpp"

#include "support.hpp"

#include <cmath>

using namespace skelmeas;

namespace {

Rat exact_value(const QExpSum& s, long q)
{
    QValue v = qexp_eval(s, Rat(q));
    REQUIRE(v.exact);
    return v.lo;
}

Rat r_pow(const Rat& r, const Rat& exponent)
{
    REQUIRE(is_integer(exponent));
    return rpow(r, to_long(exponent.get_num()));
}

/// Independent brute force for box specs: plain nested loops over k/e.
Rat box_oracle(const std::vector<std::pair<long, long>>& box, const std::vector<Rat>& alpha, long e, long f, long r,
               bool off_tau, int d)
{
    const std::size_t n = box.size();
    std::vector<long> k(n);
    for (std::size_t j = 0; j < n; ++j) k[j] = box[j].first * e;
    Rat total = 0;
    for (;;) {
        Rat a = 0;
        for (std::size_t j = 0; j < n; ++j) a += alpha[j] * make_rat(k[j], e);
        if (!(off_tau && a == 0)) total += r_pow(Rat(r), -Rat(e * f) * a);
        std::size_t j = 0;
        while (j < n) {
            if (++k[j] <= box[j].second * e) break;
            k[j] = box[j].first * e;
            ++j;
        }
        if (j == n) break;
    }
    return total / rpow(Rat(e), d);
}

}  // namespace

TEST_CASE("weighted sum examples")
{
    auto s = box_spec({{0, 1}}, {Rat(1)}, {}, 2);
    CHECK(exact_value(lemma_sum_bruteforce(s, 2, 2), 2) == make_rat(21, 16));
    CHECK(tau_dimension(s) == 0);

    auto flat = box_spec({{0, 1}}, {Rat(0)}, {}, 3);
    for (long e = 1; e <= 6; ++e)
        for (long f = 1; f <= 3; ++f) CHECK(exact_value(lemma_sum_bruteforce(flat, e, f), 3) == make_rat(e + 1, e));

    auto three = box_spec({{0, 3}}, {Rat(1)}, {}, 2);
    CHECK(exact_value(lemma_sum_bruteforce(three, 1, 1, SumRegion::off_tau), 2) == make_rat(7, 8));
    CHECK(exact_value(lemma_sum_closedform(three, 1, 1), 2) == make_rat(7, 8));

    auto plane = box_spec({{0, 1}, {0, 1}}, {Rat(0), Rat(1)}, {}, 2, "x1");
    CHECK(tau_integral(plane) == make_rat(1, 2));
    CHECK(tau_dimension(plane) == 1);

    auto no_tau = box_spec({{1, 2}}, {Rat(1)}, {}, 2);
    CHECK(tau_dimension(no_tau) == -1);
    CHECK(tau_integral(no_tau) == 0);
}

TEST_CASE("weighted sum spec validation")
{
    CHECK_THROWS(box_spec({{0, 1}}, {Rat(-1)}, {}, 2));
    CHECK_THROWS(box_spec({{0, 1}}, {Rat(1)}, {}, 1));
    CHECK_THROWS(box_spec({{1, 0}}, {Rat(1)}, {}, 2));
    CHECK_THROWS(box_spec({{0, 1}, {0, 1}}, {Rat(1)}, {}, 2));
    auto cubic = box_spec({{0, 1}}, {Rat(0)}, {}, 2, "x1^3");
    CHECK_THROWS(tau_integral(cubic));
    auto weighted = box_spec({{0, 1}}, {Rat(1)}, {}, 2, "x1");
    CHECK_THROWS(lemma_sum_closedform(weighted, 1, 1));
    auto shifted = box_spec({{0, 2}}, {Rat(1)}, {make_rat(-1, 2)}, 2);
    CHECK_THROWS(lemma_sum_closedform(shifted, 1, 1));
}

TEST_CASE("brute force agrees with an independent loop")
{
    auto g = test::rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = static_cast<std::size_t>(test::uniform(g, 1, 3));
        std::vector<std::pair<long, long>> box;
        std::vector<std::pair<Rat, Rat>> rbox;
        std::vector<Rat> alpha;
        for (std::size_t j = 0; j < n; ++j) {
            long hi = test::uniform(g, 1, 2);
            box.emplace_back(0, hi);
            rbox.emplace_back(Rat(0), Rat(hi));
            alpha.push_back(Rat(test::uniform(g, 0, 2)));
        }
        auto s = box_spec(rbox, alpha, {}, 2);
        long e = test::uniform(g, 1, 4);
        long f = test::uniform(g, 1, 3);
        int d = std::max(tau_dimension(s), 0);
        CHECK(exact_value(lemma_sum_bruteforce(s, e, f), 2) == box_oracle(box, alpha, e, f, 2, false, d));
        CHECK(exact_value(lemma_sum_bruteforce(s, e, f, SumRegion::off_tau), 2) == box_oracle(box, alpha, e, f, 2, true, d));
    }
}

TEST_CASE("closed form equals brute force on box specs")
{
    // Fixture grid: corners on and off the lattice, mixed free coordinates.
    std::vector<WeightedSumSpec> specs{
        box_spec({{0, 1}}, {Rat(1)}, {}, 2),
        box_spec({{0, 3}}, {make_rat(1, 2)}, {}, 3),
        box_spec({{make_rat(1, 3), 1}}, {Rat(2)}, {make_rat(1, 3)}, 2),
        box_spec({{0, 1}, {0, 2}}, {Rat(0), Rat(1)}, {}, 2),
        box_spec({{0, 1}, {make_rat(1, 2), 2}}, {Rat(1), make_rat(3, 2)}, {Rat(0), make_rat(1, 2)}, 5),
        box_spec({{0, 1}, {0, 1}, {0, 1}}, {Rat(1), Rat(0), Rat(2)}, {}, 2),
    };
    for (const auto& s : specs)
        for (long e = 1; e <= 12; ++e)
            for (long f = 1; f <= 12; f += 3)
                CHECK(lemma_sum_closedform(s, e, f) == lemma_sum_bruteforce(s, e, f, SumRegion::off_tau));

    auto g = test::rng(103);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t n = static_cast<std::size_t>(test::uniform(g, 1, 3));
        std::vector<std::pair<Rat, Rat>> box;
        std::vector<Rat> alpha;
        std::vector<Rat> offset;
        for (std::size_t j = 0; j < n; ++j) {
            Rat lo = make_rat(test::uniform(g, 0, 3), test::uniform(g, 1, 3));
            Rat hi = lo + make_rat(test::uniform(g, 0, 4), 2);
            box.emplace_back(lo, hi);
            Rat a = make_rat(test::uniform(g, 0, 4), test::uniform(g, 1, 2));
            alpha.push_back(a);
            offset.push_back(lo);
        }
        auto s = box_spec(box, alpha, offset, make_rat(test::uniform(g, 3, 7), 2));
        long e = test::uniform(g, 1, 12);
        long f = test::uniform(g, 1, 12);
        CHECK(lemma_sum_closedform(s, e, f) == lemma_sum_bruteforce(s, e, f, SumRegion::off_tau));
    }
}

TEST_CASE("off-tau tail is negligible for large e f")
{
    auto s = box_spec({{0, 2}, {0, 1}}, {Rat(1), Rat(0)}, {}, 2);
    // e f min(a) * gap >= 30 with gap 1/e.
    for (long e : {1L, 3L, 6L}) {
        long f = 30;
        QValue v = qexp_eval(lemma_sum_closedform(s, e, f), 2);
        CHECK(v.hi <= make_rat(1, 1000000));
    }
}

TEST_CASE("weighted sums converge to the tau integral")
{
    auto s = box_spec({{0, 1}, {0, 1}}, {Rat(0), Rat(1)}, {}, 2, "1 + x1");
    CHECK(tau_integral(s) == make_rat(3, 2));
    double previous = 1e9;
    for (long e = 4; e <= 256; e *= 2) {
        double gap = std::abs(qexp_eval(lemma_sum_bruteforce(s, e, 24), 2).approx() - 1.5);
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 1e-2);

    // Quadratic phi on a 2-dimensional tau: integral of x1*x2 + x1^2 over [0,1]x[0,2].
    auto quad = box_spec({{0, 1}, {0, 2}, {0, 1}}, {Rat(0), Rat(0), Rat(1)}, {}, 2, "x1*x2 + x1^2");
    CHECK(tau_integral(quad) == Rat(1) + make_rat(2, 3));
}

TEST_CASE("weighted sums over a model face")
{
    auto dc = std::make_shared<DualComplex>(test::triangle_surface(1, 2, 1));
    WeightedSumSpec s;
    s.complex = dc;
    s.face = *dc->find_face("A-B-C");
    s.variables = {"A", "B", "C"};
    s.alpha = {Rat(0), Rat(1), Rat(0)};
    s.offset = {Rat(0), Rat(0), Rat(0)};
    s.phi = parse_polynomial("1", s.variables);
    s.r = 2;
    check_spec(s);
    CHECK(tau_dimension(s) == 1);
    // tau is the A-C edge with N = (1,1): length 1.
    CHECK(tau_integral(s) == 1);
    s.phi = parse_polynomial("A", s.variables);
    CHECK(tau_integral(s) == make_rat(1, 2));
    s.phi = parse_polynomial("A*C", s.variables);
    CHECK(tau_integral(s) == make_rat(1, 6));
    // At u_B = 0 the sum counts the e + 1 points of the A-C edge.
    s.phi = parse_polynomial("1", s.variables);
    for (long e = 1; e <= 8; ++e) {
        auto on_tau = lemma_sum_bruteforce(s, e, 1) - lemma_sum_bruteforce(s, e, 1, SumRegion::off_tau);
        CHECK(exact_value(on_tau, 2) == make_rat(e + 1, e));
    }
}

TEST_CASE("tau without Z_(p) points gives vanishing sums")
{
    // tau = {1/3} has no Z_(3)-point; e prime to 3 keeps lattice points away from it.
    auto s = box_spec({{make_rat(1, 3), 1}}, {Rat(1)}, {make_rat(1, 3)}, 2);
    s.p = 3;
    // alpha >= 1/(3e) at every point and grows in steps of 1/e, so with
    // f = e the sum is at most 2^{-f/3} / (1 - 2^{-f}).
    double last = 1;
    for (long e : {1L, 2L, 4L, 5L, 8L, 16L, 32L, 64L}) {
        double v = qexp_eval(lemma_sum_bruteforce(s, e, e), 2).approx();
        CHECK(v <= std::pow(2.0, -e / 3.0) / (1 - std::pow(2.0, -e)) * (1 + 1e-12));
        last = v;
    }
    CHECK(last < 1e-6);
}

TEST_CASE("simulated measure examples")
{
    DualComplex tate(builtin_model("tate_triangle"));
    auto one = simulate_measure(tate, {1, 1}, 2);
    REQUIRE(one.atoms.size() == 3);
    for (const auto& a : one.atoms) CHECK(exact_value(a.raw_hi, 2) == make_rat(1, 2));
    CHECK(exact_value(one.total_hi(), 2) == make_rat(3, 2));

    auto six = simulate_measure(tate, {2, 3}, 2);
    REQUIRE(six.atoms.size() == 6);
    for (const auto& a : six.atoms) {
        CHECK(exact_value(a.raw_lo, 2) == make_rat(7, 8));
        // Per-point formula recomputed: t^{-e wt - n} (t-1)^{dim face} |E^o|(t), t = 8.
        CHECK(a.weight == 0);
    }
    CHECK(exact_value(six.total_lo(), 2) == make_rat(21, 8));

    DualComplex two(test::two_component_model());
    auto m = simulate_measure(two, {1, 1}, 5);
    REQUIRE(m.atoms.size() == 2);
    CHECK(exact_value(m.atoms[0].normalized_hi, 5) == make_rat(6, 5));
    CHECK(exact_value(m.atoms[1].normalized_hi, 5) == make_rat(1, 5));
}

TEST_CASE("simulated masses match an independent per-point formula")
{
    auto g = test::rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        SncModel model = test::random_curve_model(g, 4, 3);
        DualComplex dc(model);
        long e = test::uniform(g, 1, 6);
        long f = test::uniform(g, 1, 3);
        long q = 5;
        Int t = ipow(q, static_cast<unsigned long>(f));
        SimulatedMeasure sim;
        try {
            sim = simulate_measure(dc, {e, f}, q);
        } catch (const std::domain_error&) {
            continue;  // a vertex of high degree has negative count at small t
        }
        for (const auto& a : sim.atoms) {
            const Face& face = dc.face(a.point.face);
            Rat wt = 0;
            for (std::size_t k = 0; k < face.vertices.size(); ++k)
                wt += Rat(dc.component(face.vertices[k]).theta_order) * a.point.u[k];
            Int count = face.dim == 0 ? eval_count_poly(dc.stratum(face.index).count_poly, t) : Int(t - 1);
            QExpSum expect = QExpSum::monomial(Rat(count), -Rat(f) * (Rat(e) * wt + 1));
            CHECK(a.raw_hi == expect);
            CHECK(a.raw_lo == expect);
        }
    }
}

TEST_CASE("simulation preconditions")
{
    DualComplex iv(builtin_model("kodaira_IV", -1, {3, {}}));
    CHECK_THROWS_AS(simulate_measure(iv, {3, 1}, 3), std::domain_error);
    CHECK_THROWS_AS(simulate_measure(iv, {1, 1}, 4), std::invalid_argument);
    CHECK_NOTHROW(simulate_measure(iv, {2, 1}, 9));
    DualComplex tate(builtin_model("tate_triangle"));
    CHECK_NOTHROW(simulate_measure(tate, {2, 1}, 2));
    DualComplex two(test::two_component_model());
    CHECK_THROWS_AS(simulate_measure(two, {1, 1}, 6), std::invalid_argument);
    CHECK_NOTHROW(simulate_measure(two, {1, 1}, 49));
}

TEST_CASE("Tate totals are 3(1 - 2^-f) for every e")
{
    DualComplex tate(builtin_model("tate_triangle"));
    for (long e = 1; e <= 20; ++e)
        for (long f = 1; f <= 20; f += 4) {
            auto sim = simulate_measure(tate, {e, f}, 2);
            CHECK(exact_value(sim.total_hi(), 2) == 3 * (1 - make_rat(Int(1), ipow(2, static_cast<unsigned long>(f)))));
        }
}

TEST_CASE("horizontal strata give mass intervals")
{
    SncModel m = builtin_model("tate_triangle");
    m.strata[3].horizontal = true;
    DualComplex dc(m);
    auto sim = simulate_measure(dc, {2, 2}, 2);
    int bounded = 0;
    for (const auto& a : sim.atoms) {
        Rat lo = exact_value(a.normalized_lo, 2);
        Rat hi = exact_value(a.normalized_hi, 2);
        CHECK(lo >= 0);
        CHECK(lo <= hi);
        if (a.bounded) {
            ++bounded;
            CHECK(lo == 0);
        } else {
            CHECK(lo == hi);
        }
    }
    CHECK(bounded == 1);
    std::vector<TestFunction> fam{TestFunction::constant(1)};
    auto rows = convergence_report(dc, {2}, {2}, 2, fam, ConvergenceMode::log_smooth);
    CHECK_FALSE(rows[0].integrals[0].exact);
    CHECK(rows[0].integrals[0].lo < rows[0].integrals[0].hi);
    CHECK_FALSE(rows[0].distance.exact());
}

TEST_CASE("convergence report on the Tate triangle")
{
    DualComplex tate(builtin_model("tate_triangle"));
    std::vector<long> seq{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto rows = convergence_report(tate, seq, seq, 2, {TestFunction::constant(1)}, ConvergenceMode::log_smooth, true);
    REQUIRE(rows.size() == 10);
    for (const auto& row : rows) {
        CHECK(row.ext.e == row.ext.f);
        CHECK(row.distance.exact());
        CHECK(row.distance.lo == 3 * make_rat(Int(1), ipow(2, static_cast<unsigned long>(row.ext.f))));
    }
    auto grid = convergence_report(tate, {1, 2}, {1, 2, 3}, 2, default_test_family(tate), ConvergenceMode::log_smooth);
    CHECK(grid.size() == 6);
    CHECK(grid[1].ext.e == 1);
    CHECK(grid[1].ext.f == 2);
    // Parallel evaluation is deterministic.
    auto again = convergence_report(tate, {1, 2}, {1, 2, 3}, 2, default_test_family(tate), ConvergenceMode::log_smooth);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i].distance.lo == again[i].distance.lo);
        CHECK(grid[i].targets == again[i].targets);
    }
    CHECK_THROWS(convergence_report(tate, {1, 2}, {1}, 2, {TestFunction::constant(1)}, ConvergenceMode::log_smooth, true));
}

TEST_CASE("unramified masses converge to the Shilov measure")
{
    DualComplex two(test::two_component_model());
    std::vector<long> fs(20);
    for (long f = 1; f <= 20; ++f) fs[static_cast<std::size_t>(f - 1)] = f;
    for (long q : {2L, 3L, 5L}) {
        for (long f : fs) {
            auto sim = simulate_measure(two, {1, f}, q);
            Rat bound = 2 * make_rat(Int(1), ipow(q, static_cast<unsigned long>(f)));
            CHECK(abs(Rat(exact_value(sim.atoms[0].normalized_hi, q) - 1)) <= bound);
            CHECK(abs(exact_value(sim.atoms[1].normalized_hi, q)) <= bound);
        }
        auto rows = convergence_report(two, {1}, fs, q, default_test_family(two), ConvergenceMode::shilov);
        for (const auto& row : rows) {
            CHECK(row.targets[0] == 1);
            CHECK(row.distance.hi <= 2 * make_rat(Int(1), ipow(q, static_cast<unsigned long>(row.ext.f))));
        }
    }

    // Random curves at e = 1: limit tdeg at the minimisers and 0 elsewhere.
    auto g = test::rng(109);
    for (int trial = 0; trial < 40; ++trial) {
        DualComplex dc(test::random_curve_model(g, 3, 3));
        auto sh = shilov_boundary(dc, 1);
        for (long f = 4; f <= 20; f += 4) {
            auto sim = simulate_measure(dc, {1, f}, 2, Normalization::shilov);
            Rat qf = Rat(ipow(2, static_cast<unsigned long>(f)));
            for (const auto& a : sim.atoms) {
                bool arg = sh.ord_min_base && a.weight == *sh.ord_min_base;
                Rat limit = arg ? Rat(a.tdeg) : Rat(0);
                Rat err = abs(Rat(exact_value(a.normalized_hi, 2) - limit));
                CHECK(err * qf <= Rat(long(dc.num_components()) + 2));
            }
        }
    }
}

TEST_CASE("type IV tame sweep has no temperate limit")
{
    DualComplex iv(builtin_model("kodaira_IV", -1, {3, {}}));
    auto rows = convergence_report(iv, {1, 2, 4, 5, 7}, {1, 4, 8}, 3, {TestFunction::constant(1)}, ConvergenceMode::tame);
    for (const auto& row : rows) {
        CHECK(row.dim == -1);
        CHECK(row.targets[0] == 0);
    }
    // The normalised total decays with f at fixed e.
    for (long e : {1L, 2L, 4L}) {
        Rat previous = 1000;
        for (long f = 1; f <= 8; ++f) {
            Rat total = qexp_eval(simulate_measure(iv, {e, f}, 3, Normalization::temperate).total_hi(), 3).hi;
            CHECK(total < previous);
            previous = total;
        }
    }
}

TEST_CASE("shipped lemma specs")
{
    const std::string dir = SKELMEAS_MODELS_DIR;
    auto tau = load_lemma_spec(dir + "/lemma_tau.toml");
    CHECK(tau_integral(tau) == make_rat(3, 2));
    auto face = load_lemma_spec(dir + "/lemma_face.toml");
    CHECK(tau_dimension(face) == 0);
    CHECK(tau_integral(face) == 1);
    auto none = load_lemma_spec(dir + "/lemma_no_point.toml");
    CHECK(none.p == 3);
    auto grid = load_lemma_spec(dir + "/lemma_grid.toml");
    CHECK(lemma_sum_closedform(grid, 5, 7) == lemma_sum_bruteforce(grid, 5, 7, SumRegion::off_tau));
}
