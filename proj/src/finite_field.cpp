#include "skelmeas/langweil.hpp"

#include <algorithm>
#include <stdexcept>

namespace skelmeas {

namespace {

using Poly = std::vector<long>;  // coefficients mod p, lowest first

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p)
{
    long r = 1;
    long b = ((a % p) + p) % p;
    for (long k = p - 2; k > 0; k >>= 1) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& f, long p)
{
    trim(a);
    const std::size_t df = f.size() - 1;
    long inv_lead = inv_mod(f.back(), p);
    while (a.size() >= f.size()) {
        long c = a.back() * inv_lead % p;
        std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i < f.size(); ++i) a[shift + i] = ((a[shift + i] - c * f[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, long p)
{
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(Poly base, unsigned long k, const Poly& f, long p)
{
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (k > 0) {
        if (k & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        k >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, long p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<long> prime_factors(long n)
{
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

Poly monic(const std::vector<long>& lower)
{
    Poly f = lower;
    f.push_back(1);
    return f;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<long>& lower, long p)
{
    const Poly f = monic(lower);
    const std::size_t m = lower.size();
    if (m == 0) return false;
    if (m == 1) return true;
    Poly x{0, 1};
    Poly power = x;
    for (std::size_t i = 1; i <= m / 2; ++i) {
        power = poly_powmod(power, static_cast<unsigned long>(p), f, p);
        Poly diff = power;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(long p, long m) : p_(p), m_(m)
{
    if (p < 2 || m < 1) throw std::invalid_argument("finite field needs a prime p and m >= 1");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    Int order = ipow(Int(p), static_cast<unsigned long>(m));
    if (order > max_order) throw std::invalid_argument("field too large: " + order.get_str() + " > 2^20");
    q_ = order.get_si();
    const auto factors = prime_factors(q_ - 1);

    bool found = false;
    for (long code = 0; code < q_ && !found; ++code) {
        std::vector<long> lower(static_cast<std::size_t>(m));
        long c = code;
        for (long i = 0; i < m; ++i) {
            lower[static_cast<std::size_t>(i)] = c % p;
            c /= p;
        }
        if (lower[0] == 0) continue;
        if (!is_irreducible_mod_p(lower, p)) continue;
        const Poly f = monic(lower);
        bool primitive = true;
        for (long r : factors) {
            Poly v = poly_powmod(Poly{0, 1}, static_cast<unsigned long>((q_ - 1) / r), f, p);
            if (v == Poly{1}) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            modulus_ = lower;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no primitive modulus found");
    if (m == 1) root_ = (p - modulus_[0]) % p;  // x = -c_0

    // exp table by repeated multiplication with x.
    exp_.assign(static_cast<std::size_t>(q_ - 1), 0);
    log_.assign(static_cast<std::size_t>(q_), 0);
    std::vector<long> digits(static_cast<std::size_t>(m), 0);
    digits[0] = 1;
    for (long k = 0; k < q_ - 1; ++k) {
        std::uint32_t code = 0;
        for (long i = m - 1; i >= 0; --i) code = code * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(digits[static_cast<std::size_t>(i)]);
        exp_[static_cast<std::size_t>(k)] = code;
        log_[code] = static_cast<std::uint32_t>(k);
        if (m == 1) {
            digits[0] = digits[0] * root_ % p;
        } else {
            long top = digits[static_cast<std::size_t>(m - 1)];
            for (long i = m - 1; i > 0; --i) digits[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(i - 1)];
            digits[0] = 0;
            for (long i = 0; i < m; ++i) {
                auto& d = digits[static_cast<std::size_t>(i)];
                d = ((d - top * modulus_[static_cast<std::size_t>(i)]) % p + p) % p;
            }
        }
    }
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const
{
    if (p_ == 2) return a ^ b;
    if (m_ == 1) return static_cast<std::uint32_t>((a + b) % static_cast<std::uint32_t>(p_));
    std::uint32_t out = 0;
    std::uint32_t place = 1;
    const auto P = static_cast<std::uint32_t>(p_);
    while (a != 0 || b != 0) {
        out += ((a % P + b % P) % P) * place;
        a /= P;
        b /= P;
        place *= P;
    }
    return out;
}

std::uint32_t FiniteField::neg(std::uint32_t a) const
{
    if (p_ == 2) return a;
    std::uint32_t out = 0;
    std::uint32_t place = 1;
    const auto P = static_cast<std::uint32_t>(p_);
    while (a != 0) {
        out += ((P - a % P) % P) * place;
        a /= P;
        place *= P;
    }
    return out;
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const
{
    if (a == 0 || b == 0) return 0;
    std::uint64_t k = static_cast<std::uint64_t>(log_[a]) + log_[b];
    return exp_[k % static_cast<std::uint64_t>(q_ - 1)];
}

std::uint32_t FiniteField::pow(std::uint32_t a, unsigned long k) const
{
    if (k == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(log_[a]) * (k % static_cast<unsigned long>(q_ - 1));
    return exp_[e % static_cast<std::uint64_t>(q_ - 1)];
}

std::uint32_t FiniteField::from_integer(const Int& c) const
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p_));
    return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t FiniteField::from_rational(const Rat& c) const
{
    std::uint32_t den = from_integer(c.get_den());
    if (den == 0) throw std::domain_error("coefficient " + to_string(c) + " has a denominator divisible by p");
    std::uint32_t inv = static_cast<std::uint32_t>(inv_mod(den, p_));
    return mul(from_integer(c.get_num()), inv);
}

}  // namespace skelmeas
