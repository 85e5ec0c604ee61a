#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skelmeas {

using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

/// Accepts "a", "-a/b" and plain decimals such as "0.25".
Rat parse_rat(std::string_view text);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
/// 12 significant digits, printf %g style.
std::string to_decimal(const Rat& x, int digits = 12);

bool is_integer(const Rat& x);
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);
Int ipow(const Int& base, unsigned long exp);
Rat rpow(const Rat& base, long exp);
long gcd_l(long a, long b);
long lcm_l(long a, long b);
Int gcd_i(const Int& a, const Int& b);
Int lcm_i(const Int& a, const Int& b);
long to_long(const Int& x);

/// Exact k-th root if x is a perfect k-th power.
std::optional<Int> exact_root(const Int& x, unsigned long k);

/// Univariate integer polynomial in t, coefficients lowest degree first.
class CountPoly {
public:
    CountPoly() = default;
    explicit CountPoly(std::vector<Int> coeffs);
    static CountPoly from_longs(const std::vector<long>& coeffs);
    static CountPoly constant(const Int& c);
    static CountPoly t_minus_one_pow(unsigned k);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Int leading() const;
    const std::vector<Int>& coeffs() const { return coeffs_; }
    Int operator()(const Int& t) const;

    bool divisible_by(const Int& d) const;
    CountPoly divided_by(const Int& d) const;

    friend CountPoly operator+(const CountPoly& a, const CountPoly& b);
    friend CountPoly operator-(const CountPoly& a, const CountPoly& b);
    friend CountPoly operator*(const CountPoly& a, const CountPoly& b);
    friend bool operator==(const CountPoly& a, const CountPoly& b) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<Int> coeffs_;
};

/// Evaluates at t; t must be >= 1.
Int eval_count_poly(const CountPoly& p, const Int& t);

struct QTerm {
    Rat coefficient;
    Rat exponent;
    bool operator==(const QTerm&) const = default;
};

/// Finite sum of c * q^a with rational c and a, canonical form:
/// strictly increasing exponents, no zero coefficients.
class QExpSum {
public:
    QExpSum() = default;
    static QExpSum monomial(const Rat& coefficient, const Rat& exponent);
    static QExpSum constant(const Rat& c) { return monomial(c, 0); }

    const std::vector<QTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool has_integer_exponents() const;
    /// Common denominator of all exponents (1 for the zero sum).
    Int exponent_denominator() const;

    QExpSum& operator+=(const QExpSum& other);
    QExpSum& operator-=(const QExpSum& other);
    friend QExpSum operator+(QExpSum a, const QExpSum& b) { return a += b; }
    friend QExpSum operator-(QExpSum a, const QExpSum& b) { return a -= b; }
    friend QExpSum operator*(const QExpSum& a, const QExpSum& b);
    QExpSum scaled(const Rat& c) const;
    QExpSum shifted(const Rat& exponent) const;
    /// Exact quotient; throws std::domain_error if the divisor does not divide.
    QExpSum divided_by(const QExpSum& divisor) const;
    bool operator==(const QExpSum&) const = default;

    std::string to_string(const std::string& base = "q") const;

private:
    void add_term(const Rat& c, const Rat& a);
    std::vector<QTerm> terms_;
};

/// Value of a QExpSum at a concrete q: exact when possible, otherwise an
/// enclosing interval [lo, hi].
struct QValue {
    bool exact = true;
    Rat lo;
    Rat hi;
    Rat midpoint() const { return (lo + hi) / 2; }
    double approx() const { return midpoint().get_d(); }
    std::string to_string() const;
};

/// q must exceed 1. Interval results have width <= 2^-precision_bits.
QValue qexp_eval(const QExpSum& s, const Rat& q, unsigned precision_bits = 64);

}  // namespace skelmeas
