#include "skelmeas/convergence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace skelmeas {

Rat WeightedSumSpec::alpha_at(const std::vector<Rat>& x) const
{
    Rat a = 0;
    for (std::size_t j = 0; j < alpha.size(); ++j) a += alpha[j] * (x[j] - offset[j]);
    return a;
}

namespace {

// Vertices of the face variant in u-coordinates.
std::vector<std::vector<Rat>> simplex_vertices(const WeightedSumSpec& s)
{
    const Face& f = s.complex->face(s.face);
    std::vector<std::vector<Rat>> vs;
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
        std::vector<Rat> v(f.vertices.size(), Rat(0));
        v[k] = make_rat(1, f.N[k]);
        vs.push_back(std::move(v));
    }
    return vs;
}

Rat min_alpha(const WeightedSumSpec& s)
{
    if (s.is_box()) {
        Rat m = 0;
        for (std::size_t j = 0; j < s.arity(); ++j) {
            const Rat& end = s.alpha[j] > 0 ? s.box[j].first : s.box[j].second;
            m += s.alpha[j] * (end - s.offset[j]);
        }
        return m;
    }
    auto vs = simplex_vertices(s);
    Rat m = s.alpha_at(vs.front());
    for (const auto& v : vs) m = std::min(m, s.alpha_at(v));
    return m;
}

// Calls fn(x) for every (1/e)Z-point of P.
template <typename Fn>
void for_each_point(const WeightedSumSpec& s, long e, Fn&& fn)
{
    if (s.is_box()) {
        const std::size_t n = s.arity();
        std::vector<Int> lo(n);
        std::vector<Int> hi(n);
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = ceil_rat(s.box[j].first * Rat(e));
            hi[j] = floor_rat(s.box[j].second * Rat(e));
            if (hi[j] < lo[j]) return;
        }
        std::vector<Int> k = lo;
        std::vector<Rat> x(n);
        for (;;) {
            for (std::size_t j = 0; j < n; ++j) x[j] = make_rat(k[j], Int(e));
            fn(x);
            std::size_t j = 0;
            while (j < n) {
                if (k[j] < hi[j]) {
                    ++k[j];
                    break;
                }
                k[j] = lo[j];
                ++j;
            }
            if (j == n) return;
        }
    }
    const DualComplex& dc = *s.complex;
    const Face& f = dc.face(s.face);
    for (std::size_t g : dc.closure(s.face)) {
        const Face& sub = dc.face(g);
        for (const auto& pt : face_interior_points(dc, g, e)) {
            std::vector<Rat> x(f.vertices.size(), Rat(0));
            for (std::size_t k = 0; k < sub.vertices.size(); ++k) {
                auto pos = std::find(f.vertices.begin(), f.vertices.end(), sub.vertices[k]) - f.vertices.begin();
                x[static_cast<std::size_t>(pos)] = pt.u[k];
            }
            fn(x);
        }
    }
}

QExpSum from_map(const std::map<Rat, Rat>& acc)
{
    QExpSum s;
    for (const auto& [a, c] : acc) s += QExpSum::monomial(c, a);
    return s;
}

// E[prod of monomial] for barycentric coordinates uniform on a simplex of
// dimension d: prod k_i! * d! / (d + sum k_i)!.
Rat dirichlet_moment(const std::vector<unsigned>& k, int d)
{
    Int num = 1;
    unsigned total = 0;
    for (unsigned ki : k) {
        for (unsigned t = 2; t <= ki; ++t) num *= t;
        total += ki;
    }
    for (int t = 2; t <= d; ++t) num *= t;
    Int den = 1;
    for (unsigned t = 2; t <= static_cast<unsigned>(d) + total; ++t) den *= t;
    return make_rat(num, den);
}

}  // namespace

void check_spec(const WeightedSumSpec& s)
{
    const std::size_t n = s.arity();
    if (n == 0) throw std::invalid_argument("weighted sum needs at least one coordinate");
    if (s.offset.size() != n) throw std::invalid_argument("alpha offsets and coefficients differ in length");
    if (s.variables.size() != n) throw std::invalid_argument("variable list does not match alpha");
    if (s.phi.nvars() != n) throw std::invalid_argument("phi arity does not match alpha");
    if (s.r <= 1) throw std::invalid_argument("r must exceed 1");
    if (s.is_box()) {
        if (s.box.size() != n) throw std::invalid_argument("box dimension does not match alpha");
        for (const auto& [lo, hi] : s.box)
            if (hi < lo) throw std::invalid_argument("empty box interval");
    } else if (s.complex->face(s.face).vertices.size() != n) {
        throw std::invalid_argument("face arity does not match alpha");
    }
    if (min_alpha(s) < 0) throw std::invalid_argument("alpha is negative somewhere on P");
}

WeightedSumSpec box_spec(std::vector<std::pair<Rat, Rat>> box, std::vector<Rat> alpha, std::vector<Rat> offset,
                         const Rat& r, const std::string& phi)
{
    WeightedSumSpec s;
    for (std::size_t j = 0; j < alpha.size(); ++j) s.variables.push_back("x" + std::to_string(j + 1));
    s.box = std::move(box);
    s.alpha = std::move(alpha);
    s.offset = offset.empty() ? std::vector<Rat>(s.alpha.size(), Rat(0)) : std::move(offset);
    s.phi = parse_polynomial(phi, s.variables);
    s.r = r;
    check_spec(s);
    return s;
}

int tau_dimension(const WeightedSumSpec& s)
{
    if (min_alpha(s) != 0) return -1;
    if (s.is_box()) {
        int d = 0;
        for (std::size_t j = 0; j < s.arity(); ++j)
            if (s.alpha[j] == 0 && s.box[j].first < s.box[j].second) ++d;
        return d;
    }
    int zeros = 0;
    for (const auto& v : simplex_vertices(s))
        if (s.alpha_at(v) == 0) ++zeros;
    return zeros - 1;
}

QExpSum lemma_sum_bruteforce(const WeightedSumSpec& s, long e, long f, SumRegion region)
{
    check_spec(s);
    if (e < 1 || f < 1) throw std::invalid_argument("e and f must be >= 1");
    std::map<Rat, Rat> acc;
    const Rat ef(e * f);
    for_each_point(s, e, [&](const std::vector<Rat>& x) {
        Rat a = s.alpha_at(x);
        if (region == SumRegion::off_tau && a == 0) return;
        Rat v = s.phi.evaluate(x);
        if (v != 0) acc[-ef * a] += v;
    });
    int d = std::max(tau_dimension(s), 0);
    return from_map(acc).scaled(rpow(Rat(e), -d));
}

QExpSum lemma_sum_closedform(const WeightedSumSpec& s, long e, long f)
{
    check_spec(s);
    if (!s.is_box()) throw std::invalid_argument("closed form needs a box spec");
    if (!(s.phi == MPoly::constant(s.arity(), 1))) throw std::invalid_argument("closed form needs phi = 1");
    const Rat E(e);
    QExpSum product = QExpSum::constant(1);
    Int free_count = 1;
    bool corner_on_lattice = true;
    for (std::size_t j = 0; j < s.arity(); ++j) {
        const auto& [lo, hi] = s.box[j];
        if (s.alpha[j] == 0) {
            Int cnt = floor_rat(hi * E) - ceil_rat(lo * E) + 1;
            if (cnt < 0) cnt = 0;
            free_count *= cnt;
            continue;
        }
        if (s.alpha[j] < 0 || lo != s.offset[j])
            throw std::invalid_argument("closed form needs boxes [q_i, N_i] on the coordinates where alpha grows");
        Int m = ceil_rat(s.offset[j] * E);
        Int M = floor_rat(hi * E);
        Rat step = -Rat(f) * s.alpha[j];
        Rat eq = s.offset[j] * E;
        // sum_{k=m}^{M} r^{-f a (k - e q)} = (r^{step(M-eq+1)} - r^{step(m-eq)}) / (r^{step} - 1)
        QExpSum numerator = QExpSum::monomial(1, step * (Rat(M) - eq + 1)) - QExpSum::monomial(1, step * (Rat(m) - eq));
        QExpSum denominator = QExpSum::monomial(1, step) - QExpSum::constant(1);
        product = product * numerator.divided_by(denominator);
        if (!is_integer(eq)) corner_on_lattice = false;
    }
    QExpSum total = product.scaled(Rat(free_count));
    if (corner_on_lattice) total -= QExpSum::constant(Rat(free_count));
    int d = std::max(tau_dimension(s), 0);
    return total.scaled(rpow(E, -d));
}

Rat tau_integral(const WeightedSumSpec& s)
{
    check_spec(s);
    if (s.phi.degree() > 2) throw std::invalid_argument("tau_integral supports phi of degree <= 2");
    const int d = tau_dimension(s);
    if (d < 0) return 0;
    if (s.is_box()) {
        Rat total = 0;
        for (const auto& [ex, c] : s.phi.terms()) {
            Rat term = c;
            for (std::size_t j = 0; j < s.arity(); ++j) {
                const auto& [lo, hi] = s.box[j];
                if (s.alpha[j] != 0) {
                    term *= rpow(s.alpha[j] > 0 ? lo : hi, ex[j]);
                } else if (lo == hi) {
                    term *= rpow(lo, ex[j]);
                } else {
                    term *= (rpow(hi, ex[j] + 1) - rpow(lo, ex[j] + 1)) / Rat(ex[j] + 1);
                }
            }
            total += term;
        }
        return total;
    }
    // Simplex: tau is the subface spanned by the vertices where alpha = 0;
    // u_j = lambda_j / N_j with lambda uniform on the subface.
    const DualComplex& dc = *s.complex;
    const Face& f = dc.face(s.face);
    auto vs = simplex_vertices(s);
    std::vector<std::size_t> zero_pos;
    std::vector<std::size_t> sub_vertices;
    for (std::size_t k = 0; k < vs.size(); ++k)
        if (s.alpha_at(vs[k]) == 0) {
            zero_pos.push_back(k);
            sub_vertices.push_back(f.vertices[k]);
        }
    const Face& sub = dc.face(dc.subface(s.face, sub_vertices));
    Rat mean = 0;
    for (const auto& [ex, c] : s.phi.terms()) {
        bool vanishes = false;
        std::vector<unsigned> k;
        Rat coef = c;
        for (std::size_t j = 0; j < ex.size(); ++j) {
            bool in_tau = std::find(zero_pos.begin(), zero_pos.end(), j) != zero_pos.end();
            if (ex[j] > 0 && !in_tau) vanishes = true;
            if (in_tau) {
                k.push_back(ex[j]);
                coef /= rpow(Rat(f.N[j]), ex[j]);
            }
        }
        if (!vanishes) mean += coef * dirichlet_moment(k, d);
    }
    return mean * face_volume(sub);
}

}  // namespace skelmeas
