#include "skelmeas/langweil.hpp"

#include "skelmeas/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace skelmeas {

namespace {

struct CompiledTerm {
    std::uint32_t coeff;
    std::vector<unsigned> exps;
};

std::vector<CompiledTerm> compile(const MPoly& f, const FiniteField& F)
{
    std::vector<CompiledTerm> out;
    for (const auto& [e, c] : f.terms()) {
        std::uint32_t v = F.from_rational(c);
        if (v != 0) out.push_back({v, e});
    }
    return out;
}

std::uint32_t eval(const std::vector<CompiledTerm>& terms, const std::vector<std::uint32_t>& x, const FiniteField& F)
{
    const std::uint64_t order = static_cast<std::uint64_t>(F.order() - 1);
    std::uint32_t acc = 0;
    for (const auto& t : terms) {
        std::uint64_t lg = F.log(t.coeff);
        bool zero = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (t.exps[i] == 0) continue;
            if (x[i] == 0) {
                zero = true;
                break;
            }
            lg += static_cast<std::uint64_t>(F.log(x[i])) * t.exps[i];
        }
        if (!zero) acc = F.add(acc, F.exp(static_cast<std::uint32_t>(lg % order)));
    }
    return acc;
}

constexpr long double enumeration_budget = 16777216.0L;  // 2^24 points

}  // namespace

VarietySpec make_variety(const std::vector<std::string>& equations, std::vector<std::string> variables,
                         const std::string& exclude, bool projective, std::optional<int> dimension)
{
    VarietySpec v;
    if (variables.empty()) {
        std::vector<std::string> all;
        for (const auto& e : equations)
            for (auto& name : collect_variables(e)) all.push_back(name);
        for (auto& name : collect_variables(exclude)) all.push_back(name);
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        variables = all;
    }
    v.variables = variables;
    for (const auto& e : equations) v.equations.push_back(parse_polynomial(e, variables));
    if (!exclude.empty()) v.exclude = parse_polynomial(exclude, variables);
    v.projective = projective;
    int k = static_cast<int>(variables.size());
    int expected = k - static_cast<int>(equations.size()) - (projective ? 1 : 0);
    v.dimension = dimension.value_or(std::max(expected, 0));
    return v;
}

Int count_points(const VarietySpec& v, const FiniteField& F)
{
    const std::size_t k = v.variables.size();
    for (const auto& eq : v.equations)
        if (eq.nvars() != k) throw std::invalid_argument("equation arity does not match the variable list");
    if (v.exclude && v.exclude->nvars() != k) throw std::invalid_argument("exclusion arity does not match");
    if (v.projective) {
        if (k == 0) throw std::invalid_argument("projective count needs variables");
        for (const auto& eq : v.equations)
            if (!eq.is_homogeneous()) throw std::invalid_argument("projective equations must be homogeneous");
        if (v.exclude && !v.exclude->is_homogeneous()) throw std::invalid_argument("projective exclusion must be homogeneous");
    }
    const long q = F.order();
    long double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<long double>(q);
    if (total > enumeration_budget)
        throw std::invalid_argument("enumeration too large: q^" + std::to_string(k) + " exceeds 2^24 points");

    std::vector<std::vector<CompiledTerm>> eqs;
    for (const auto& eq : v.equations) eqs.push_back(compile(eq, F));
    std::vector<CompiledTerm> excl;
    if (v.exclude) excl = compile(*v.exclude, F);

    // Split on the first coordinate for the thread pool.
    const long outer = k == 0 ? 1 : q;
    auto counts = parallel_map(static_cast<std::size_t>(outer), [&](std::size_t first) {
        std::uint64_t c = 0;
        std::vector<std::uint32_t> x(k, 0);
        if (k > 0) x[0] = static_cast<std::uint32_t>(first);
        for (;;) {
            bool nonzero = !v.projective;
            for (auto xi : x) nonzero = nonzero || xi != 0;
            if (nonzero) {
                bool on = true;
                for (const auto& eq : eqs)
                    if (eval(eq, x, F) != 0) {
                        on = false;
                        break;
                    }
                if (on && v.exclude) on = eval(excl, x, F) != 0;
                if (on) ++c;
            }
            std::size_t i = 1;
            while (i < k) {
                if (++x[i] < static_cast<std::uint32_t>(q)) break;
                x[i] = 0;
                ++i;
            }
            if (i >= k) break;
        }
        return c;
    });
    Int total_count = 0;
    for (auto c : counts) total_count += static_cast<unsigned long>(c);
    if (v.projective) {
        Int rem;
        mpz_fdiv_r_ui(rem.get_mpz_t(), total_count.get_mpz_t(), static_cast<unsigned long>(q - 1));
        if (rem != 0) throw std::logic_error("affine cone count not divisible by q - 1");
        total_count /= static_cast<unsigned long>(q - 1);
    }
    return total_count;
}

std::vector<LangWeilRow> langweil_sequence(const VarietySpec& v, long p, long m_lo, long m_hi)
{
    if (m_lo < 1 || m_hi < m_lo) throw std::invalid_argument("bad m range");
    std::vector<LangWeilRow> rows;
    for (long m = m_lo; m <= m_hi; ++m) {
        FiniteField F(p, m);
        LangWeilRow row;
        row.m = m;
        row.q_m = F.order();
        row.count = count_points(v, F);
        row.dimension = v.dimension;
        row.normalized = make_rat(row.count, ipow(row.q_m, static_cast<unsigned long>(v.dimension)));
        rows.push_back(std::move(row));
    }
    return rows;
}

bool langweil_bound_holds(const LangWeilRow& row, const Rat& c_Z, const Rat& C)
{
    if (C < 0) return false;
    // |count - c Q^n| <= C Q^{n - 1/2}  <=>  diff^2 Q <= C^2 Q^{2n}
    Int Qn = ipow(row.q_m, static_cast<unsigned long>(row.dimension));
    Rat diff = Rat(row.count) - c_Z * Rat(Qn);
    return diff * diff * Rat(row.q_m) <= C * C * Rat(Qn * Qn);
}

bool langweil_limit_check(const std::vector<LangWeilRow>& seq, const Rat& c_Z, const Rat& C)
{
    for (const auto& row : seq)
        if (!langweil_bound_holds(row, c_Z, C)) return false;
    return true;
}

}  // namespace skelmeas
