#pragma once

#include "skelmeas/exact.hpp"
#include "skelmeas/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skelmeas {

/// F_{p^m} with elements encoded as integers 0..q-1 whose base-p digits
/// are the coefficients of a polynomial in x modulo a fixed modulus.
class FiniteField {
public:
    static constexpr long max_order = 1L << 20;

    /// Modulus: first monic degree-m polynomial (coefficients read as a
    /// base-p number, constant term least significant) that is irreducible
    /// and has x as a primitive root.
    FiniteField(long p, long m);

    long p() const { return p_; }
    long m() const { return m_; }
    long order() const { return q_; }
    /// Coefficients c_0..c_{m-1} of x^m + sum c_i x^i.
    const std::vector<long>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, unsigned long k) const;
    std::uint32_t from_integer(const Int& c) const;
    /// Image of a rational with denominator prime to p.
    std::uint32_t from_rational(const Rat& c) const;
    std::uint32_t generator() const { return static_cast<std::uint32_t>(m_ == 1 ? root_ : p_); }
    std::uint32_t log(std::uint32_t a) const { return log_[a]; }
    std::uint32_t exp(std::uint32_t k) const { return exp_[k % (q_ - 1)]; }

private:
    long p_;
    long m_;
    long q_;
    long root_ = 0;
    std::vector<long> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// Irreducibility over F_p of a monic polynomial given by its lower
/// coefficients (Ben-Or test).
bool is_irreducible_mod_p(const std::vector<long>& lower_coeffs, long p);

struct VarietySpec {
    std::vector<std::string> variables;
    std::vector<MPoly> equations;
    std::optional<MPoly> exclude;  // count only points where this is nonzero
    bool projective = false;
    int dimension = 0;  // n in the normalization count / q^{n}
};

/// Infix equations over the given (or detected) variables.
VarietySpec make_variety(const std::vector<std::string>& equations, std::vector<std::string> variables = {},
                         const std::string& exclude = "", bool projective = false, std::optional<int> dimension = {});

/// Brute-force point count; projective counts divide the affine cone
/// minus the origin by q - 1.
Int count_points(const VarietySpec& v, const FiniteField& F);

struct LangWeilRow {
    long m = 1;
    Int q_m;  // p^m
    Int count;
    Rat normalized;  // count / p^{n m}
    int dimension = 0;
};

std::vector<LangWeilRow> langweil_sequence(const VarietySpec& v, long p, long m_lo, long m_hi);

/// |count - c_Z p^{nm}| <= C p^{nm - 1/2} on every row (exact comparison).
bool langweil_limit_check(const std::vector<LangWeilRow>& seq, const Rat& c_Z, const Rat& C);
bool langweil_bound_holds(const LangWeilRow& row, const Rat& c_Z, const Rat& C);

}  // namespace skelmeas
