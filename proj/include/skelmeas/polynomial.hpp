#pragma once

#include "skelmeas/exact.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace skelmeas {

/// Sparse multivariate polynomial with rational coefficients in a fixed
/// number of variables.
class MPoly {
public:
    using Exponents = std::vector<unsigned>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}
    static MPoly constant(std::size_t nvars, const Rat& c);
    static MPoly variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    bool is_homogeneous() const;
    bool has_integer_coefficients() const;

    void add_term(const Exponents& e, const Rat& c);
    Rat evaluate(const std::vector<Rat>& x) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly scaled(const Rat& c) const;
    MPoly pow(unsigned k) const;
    /// Replaces variable i by images[i]; all images share one arity.
    MPoly compose(const std::vector<MPoly>& images) const;
    bool operator==(const MPoly&) const = default;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::size_t nvars_;
    std::map<Exponents, Rat> terms_;
};

/// Identifiers appearing in an infix expression, sorted.
std::vector<std::string> collect_variables(std::string_view text);

/// Parses "x^2 + 3*y - 1/2" style input over the given variable names.
MPoly parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

}  // namespace skelmeas
