#include "skelmeas/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace skelmeas {

MPoly MPoly::constant(std::size_t nvars, const Rat& c)
{
    MPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index)
{
    if (index >= nvars) throw std::out_of_range("variable index");
    MPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

int MPoly::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (unsigned k : e) s += static_cast<int>(k);
        d = std::max(d, s);
    }
    return d;
}

bool MPoly::is_homogeneous() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (unsigned k : e) s += static_cast<int>(k);
        if (d >= 0 && s != d) return false;
        d = s;
    }
    return true;
}

bool MPoly::has_integer_coefficients() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return is_integer(kv.second); });
}

void MPoly::add_term(const Exponents& e, const Rat& c)
{
    if (e.size() != nvars_) throw std::invalid_argument("exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat MPoly::evaluate(const std::vector<Rat>& x) const
{
    if (x.size() != nvars_) throw std::invalid_argument("point arity mismatch");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat m = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0) m *= rpow(x[i], e[i]);
        acc += m;
    }
    return acc;
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b)
{
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    MPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponents e(a.nvars_);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::scaled(const Rat& c) const
{
    MPoly r(nvars_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

MPoly MPoly::pow(unsigned k) const
{
    MPoly r = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const
{
    if (images.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
    std::size_t n = images.empty() ? 0 : images.front().nvars();
    MPoly r(n);
    for (const auto& [e, c] : terms_) {
        MPoly m = constant(n, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0) m = m * images[i].pow(e[i]);
        r += m;
    }
    return r;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        Rat mag = abs(c);
        std::string coeff = skelmeas::to_string(mag);
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        if (mono.empty()) out += coeff;
        else if (mag == 1) out += mono;
        else out += coeff + "*" + mono;
    }
    return out;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    MPoly parse()
    {
        MPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly expr()
    {
        MPoly r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }

    MPoly term()
    {
        MPoly r = unary();
        for (;;) {
            if (accept('*')) {
                r = r * unary();
            } else if (accept('/')) {
                Rat d = number();
                if (d == 0) fail("division by zero");
                r = r.scaled(Rat(1) / d);
            } else {
                return r;
            }
        }
    }

    MPoly unary()
    {
        if (accept('-')) return unary().scaled(-1);
        if (accept('+')) return unary();
        return power();
    }

    MPoly power()
    {
        MPoly base = atom();
        if (accept('^')) {
            Rat e = number();
            if (!is_integer(e) || e < 0) fail("exponent must be a non-negative integer");
            return base.pow(static_cast<unsigned>(e.get_num().get_ui()));
        }
        return base;
    }

    Rat number()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (start == pos_) fail("expected a number");
        return parse_rat(s_.substr(start, pos_ - start));
    }

    MPoly atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return MPoly::constant(vars_.size(), number());
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) fail("unknown variable '" + name + "'");
            return MPoly::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> collect_variables(std::string_view text)
{
    std::set<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        if (ident_start(text[i]) && (i == 0 || !ident_char(text[i - 1]))) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            names.emplace(text.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return {names.begin(), names.end()};
}

MPoly parse_polynomial(std::string_view text, const std::vector<std::string>& vars)
{
    return Parser(text, vars).parse();
}

}  // namespace skelmeas
