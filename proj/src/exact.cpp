#include "skelmeas/exact.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace skelmeas {

Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat parse_rat(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto parse_int = [&](const std::string& part) {
        Int v;
        std::string body = part;
        if (!body.empty() && body[0] == '+') body.erase(0, 1);
        if (body.empty() || body == "-" ||
            !std::all_of(body.begin() + (body[0] == '-' ? 1 : 0), body.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
        v.set_str(body, 10);
        return v;
    };
    if (auto slash = s.find('/'); slash != std::string::npos)
        return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        std::string whole = s.substr(0, dot);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        Int w = parse_int(whole);
        if (frac.empty()) return Rat(w);
        Int f = parse_int(frac);
        Int scale = ipow(10, frac.size());
        Rat mag = Rat(abs(w)) + make_rat(f, scale);
        return neg ? Rat(-mag) : mag;
    }
    return Rat(parse_int(s));
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const Rat& x, int digits)
{
    mpf_class f(x, 512);
    std::string fmt = "%." + std::to_string(digits) + "Fg";
    int len = gmp_snprintf(nullptr, 0, fmt.c_str(), f.get_mpf_t());
    std::string out(static_cast<std::size_t>(len) + 1, '\0');
    gmp_snprintf(out.data(), out.size(), fmt.c_str(), f.get_mpf_t());
    out.resize(static_cast<std::size_t>(len));
    return out;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int floor_rat(const Rat& x)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Int ceil_rat(const Rat& x)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Int ipow(const Int& base, unsigned long exp)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rat rpow(const Rat& base, long exp)
{
    if (exp < 0) {
        if (base == 0) throw std::domain_error("0 raised to a negative power");
        return rpow(Rat(1) / base, -exp);
    }
    auto e = static_cast<unsigned long>(exp);
    return make_rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

long gcd_l(long a, long b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_l(long a, long b)
{
    if (a == 0 || b == 0) return 0;
    return a / gcd_l(a, b) * (b < 0 ? -b : b);
}

Int gcd_i(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm_i(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

long to_long(const Int& x)
{
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + x.get_str());
    return x.get_si();
}

std::optional<Int> exact_root(const Int& x, unsigned long k)
{
    if (k == 0) throw std::domain_error("zeroth root");
    if (x < 0 && k % 2 == 0) return std::nullopt;
    Int r;
    if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) != 0) return r;
    return std::nullopt;
}

// ---------------------------------------------------------------- CountPoly

CountPoly::CountPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CountPoly CountPoly::from_longs(const std::vector<long>& coeffs)
{
    std::vector<Int> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return CountPoly(std::move(c));
}

CountPoly CountPoly::constant(const Int& c) { return CountPoly(std::vector<Int>{c}); }

CountPoly CountPoly::t_minus_one_pow(unsigned k)
{
    CountPoly r = constant(1);
    CountPoly base = from_longs({-1, 1});
    for (unsigned i = 0; i < k; ++i) r = r * base;
    return r;
}

void CountPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int CountPoly::leading() const { return coeffs_.empty() ? Int(0) : coeffs_.back(); }

Int CountPoly::operator()(const Int& t) const
{
    Int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

bool CountPoly::divisible_by(const Int& d) const
{
    if (d == 0) return false;
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [&](const Int& c) { return mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0; });
}

CountPoly CountPoly::divided_by(const Int& d) const
{
    if (!divisible_by(d)) throw std::domain_error("count polynomial " + to_string() + " not divisible by " + d.get_str());
    std::vector<Int> c;
    for (const auto& v : coeffs_) c.push_back(v / d);
    return CountPoly(std::move(c));
}

CountPoly operator+(const CountPoly& a, const CountPoly& b)
{
    std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return CountPoly(std::move(c));
}

CountPoly operator-(const CountPoly& a, const CountPoly& b)
{
    std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return CountPoly(std::move(c));
}

CountPoly operator*(const CountPoly& a, const CountPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CountPoly(std::move(c));
}

std::string CountPoly::to_string() const
{
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Int mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool show_coeff = i == 0 || mag != 1;
        if (show_coeff) out += mag.get_str();
        if (i > 0) {
            if (show_coeff) out += "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Int eval_count_poly(const CountPoly& p, const Int& t)
{
    if (t < 1) throw std::domain_error("count polynomial evaluated at t < 1");
    return p(t);
}

// ---------------------------------------------------------------- QExpSum

QExpSum QExpSum::monomial(const Rat& coefficient, const Rat& exponent)
{
    QExpSum s;
    s.add_term(coefficient, exponent);
    return s;
}

void QExpSum::add_term(const Rat& c, const Rat& a)
{
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                               [](const QTerm& t, const Rat& e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == a) {
        it->coefficient += c;
        if (it->coefficient == 0) terms_.erase(it);
        return;
    }
    terms_.insert(it, QTerm{c, a});
}

bool QExpSum::has_integer_exponents() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const QTerm& t) { return is_integer(t.exponent); });
}

Int QExpSum::exponent_denominator() const
{
    Int d = 1;
    for (const auto& t : terms_) d = lcm_i(d, t.exponent.get_den());
    return d;
}

QExpSum& QExpSum::operator+=(const QExpSum& other)
{
    for (const auto& t : other.terms_) add_term(t.coefficient, t.exponent);
    return *this;
}

QExpSum& QExpSum::operator-=(const QExpSum& other)
{
    for (const auto& t : other.terms_) add_term(-t.coefficient, t.exponent);
    return *this;
}

QExpSum operator*(const QExpSum& a, const QExpSum& b)
{
    std::map<Rat, Rat> acc;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) acc[x.exponent + y.exponent] += x.coefficient * y.coefficient;
    QExpSum r;
    for (const auto& [e, c] : acc)
        if (c != 0) r.terms_.push_back(QTerm{c, e});
    return r;
}

QExpSum QExpSum::scaled(const Rat& c) const
{
    if (c == 0) return {};
    QExpSum r = *this;
    for (auto& t : r.terms_) t.coefficient *= c;
    return r;
}

QExpSum QExpSum::shifted(const Rat& exponent) const
{
    QExpSum r = *this;
    for (auto& t : r.terms_) t.exponent += exponent;
    return r;
}

QExpSum QExpSum::divided_by(const QExpSum& divisor) const
{
    if (divisor.is_zero()) throw std::domain_error("division by the zero sum");
    if (is_zero()) return {};
    const QTerm& dlead = divisor.terms_.back();
    Rat lowest_quotient = terms_.front().exponent - divisor.terms_.front().exponent;
    QExpSum quotient;
    QExpSum rem = *this;
    while (!rem.is_zero()) {
        const QTerm& rlead = rem.terms_.back();
        Rat qexp = rlead.exponent - dlead.exponent;
        if (qexp < lowest_quotient) throw std::domain_error("inexact division of q-exponential sums");
        QExpSum step = monomial(rlead.coefficient / dlead.coefficient, qexp);
        quotient += step;
        rem -= step * divisor;
    }
    return quotient;
}

std::string QExpSum::to_string(const std::string& base) const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        out += skelmeas::to_string(t.coefficient);
        if (t.exponent != 0) out += "*" + base + "^(" + skelmeas::to_string(t.exponent) + ")";
    }
    return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

// Bounds lo <= x^(1/b) <= hi with hi - lo <= 2^-bits (x > 0).
void root_bounds(const Rat& x, unsigned long b, unsigned long bits, Rat& lo, Rat& hi)
{
    Int scale = ipow(2, b * bits);
    Rat scaled = x * Rat(scale);
    Int fl = floor_rat(scaled);
    Int cl = ceil_rat(scaled);
    Int rlo;
    mpz_root(rlo.get_mpz_t(), fl.get_mpz_t(), b);
    Int rhi;
    bool exact = mpz_root(rhi.get_mpz_t(), cl.get_mpz_t(), b) != 0;
    if (!exact) rhi += 1;
    Int den = ipow(2, bits);
    lo = make_rat(rlo, den);
    hi = make_rat(rhi, den);
}

std::optional<Rat> exact_power(const Rat& q, const Rat& a)
{
    if (is_integer(a)) return rpow(q, to_long(a.get_num()));
    unsigned long b = a.get_den().get_ui();
    auto rn = exact_root(q.get_num(), b);
    auto rd = exact_root(q.get_den(), b);
    if (!rn || !rd) return std::nullopt;
    return rpow(make_rat(*rn, *rd), to_long(a.get_num()));
}

}  // namespace

std::string QValue::to_string() const
{
    if (exact) return skelmeas::to_string(lo);
    return "[" + to_decimal(lo) + ", " + to_decimal(hi) + "]";
}

QValue qexp_eval(const QExpSum& s, const Rat& q, unsigned precision_bits)
{
    if (q <= 1) throw std::domain_error("qexp_eval requires q > 1");
    QValue out;
    Rat exact_part = 0;
    std::vector<const QTerm*> inexact;
    for (const auto& t : s.terms()) {
        if (auto v = exact_power(q, t.exponent)) {
            exact_part += t.coefficient * *v;
        } else {
            inexact.push_back(&t);
        }
    }
    if (inexact.empty()) {
        out.lo = out.hi = exact_part;
        return out;
    }
    out.exact = false;
    Rat target = make_rat(Int(1), ipow(2, precision_bits));
    for (unsigned long bits = precision_bits + 16;; bits += 64) {
        Rat lo = exact_part;
        Rat hi = exact_part;
        for (const QTerm* t : inexact) {
            unsigned long b = t->exponent.get_den().get_ui();
            Rat base = rpow(q, to_long(t->exponent.get_num()));
            Rat rlo;
            Rat rhi;
            // Extra bits absorb the coefficient's magnitude.
            Int mag = abs(t->coefficient.get_num());
            unsigned long extra = mpz_sizeinbase(mag.get_mpz_t(), 2) + inexact.size();
            root_bounds(base, b, bits + extra, rlo, rhi);
            if (t->coefficient > 0) {
                lo += t->coefficient * rlo;
                hi += t->coefficient * rhi;
            } else {
                lo += t->coefficient * rhi;
                hi += t->coefficient * rlo;
            }
        }
        if (hi - lo <= target) {
            out.lo = lo;
            out.hi = hi;
            return out;
        }
    }
}

}  // namespace skelmeas
