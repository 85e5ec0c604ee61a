#include "skelmeas/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace skelmeas {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

std::string summary(const std::vector<std::string>& v)
{
    std::string s = "validation failed:";
    for (const auto& x : v) s += "\n  - " + x;
    return s;
}

bool valid_id(const std::string& id)
{
    if (id.empty()) return false;
    return std::none_of(id.begin(), id.end(), [](char c) {
        return c == '-' || c == '#' || c == ',' || c == '"' || std::isspace(static_cast<unsigned char>(c));
    });
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(summary(violations)), violations_(std::move(violations))
{
}

bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::string> validate(const SncModel& model)
{
    std::vector<std::string> v;
    const int n = model.dimension;
    if (n < 0) v.push_back("dimension must be >= 0");
    if (model.p != 1 && !is_prime(model.p)) v.push_back("p must be 1 or a prime, got " + std::to_string(model.p));
    if (model.q) {
        long q = *model.q;
        bool ok = model.p > 1 && q >= model.p;
        while (ok && q % model.p == 0) q /= model.p;
        if (!ok || q != 1)
            v.push_back("q = " + std::to_string(*model.q) + " is not a power of p = " + std::to_string(model.p));
    }
    if (model.m < 1) v.push_back("m must be >= 1");
    if (model.components.empty()) v.push_back("model has no components");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < model.components.size(); ++i) {
        const auto& c = model.components[i];
        if (!valid_id(c.id)) v.push_back("component id '" + c.id + "' is empty or contains '-', '#', ',' or spaces");
        if (!index.emplace(c.id, i).second) v.push_back("duplicate component id '" + c.id + "'");
        if (c.multiplicity < 1) v.push_back("component " + c.id + ": multiplicity must be >= 1");
        if (c.lattice_scale < 1) v.push_back("component " + c.id + ": lattice_scale must be >= 1");
    }

    // Component sets of well-formed strata, for the incidence checks.
    std::map<std::set<std::size_t>, int> by_set;
    std::vector<std::optional<std::set<std::size_t>>> sets(model.strata.size());
    for (std::size_t s = 0; s < model.strata.size(); ++s) {
        const auto& st = model.strata[s];
        std::string where = "stratum {" + join(st.components, ",") + "}";
        if (st.components.empty()) {
            v.push_back("stratum " + std::to_string(s) + " has no components");
            continue;
        }
        std::vector<std::string> unknown;
        for (const auto& id : st.components)
            if (!index.count(id)) unknown.push_back(id);
        if (!unknown.empty()) {
            v.push_back(where + ": unknown component(s) " + join(unknown, ","));
            continue;
        }
        std::set<std::size_t> js;
        for (const auto& id : st.components) js.insert(index[id]);
        if (js.size() != st.components.size()) {
            v.push_back(where + ": repeated component");
            continue;
        }
        const int k = static_cast<int>(js.size());
        if (st.count_poly.is_zero()) {
            v.push_back(where + ": count_poly is zero");
        } else {
            if (st.count_poly.degree() != n - (k - 1))
                v.push_back(where + ": count_poly degree " + std::to_string(st.count_poly.degree()) + " != n - (|J|-1) = " +
                            std::to_string(n - (k - 1)));
            if (st.count_poly.leading() != st.tdeg)
                v.push_back(where + ": count_poly leading coefficient " + st.count_poly.leading().get_str() +
                            " != tdeg " + std::to_string(st.tdeg));
        }
        if (st.tdeg < 1) v.push_back(where + ": tdeg must be >= 1");
        if (st.split_degree < 1) v.push_back(where + ": split_degree must be >= 1");
        sets[s] = js;
        by_set[js] += 1;
    }

    for (std::size_t i = 0; i < model.components.size(); ++i) {
        int count = by_set.count({i}) ? by_set[{i}] : 0;
        if (count == 0) v.push_back("component " + model.components[i].id + " has no singleton stratum");
        if (count > 1) v.push_back("component " + model.components[i].id + " has several singleton strata");
    }

    std::set<std::set<std::size_t>> reported;
    for (std::size_t s = 0; s < model.strata.size(); ++s) {
        if (!sets[s]) continue;
        std::vector<std::size_t> js(sets[s]->begin(), sets[s]->end());
        const std::size_t k = js.size();
        if (k > 20) continue;
        for (unsigned long mask = 1; mask + 1 < (1UL << k); ++mask) {
            std::set<std::size_t> sub;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (1UL << b)) sub.insert(js[b]);
            int count = by_set.count(sub) ? by_set[sub] : 0;
            if (count == 0 && sub.size() > 1 && reported.insert(sub).second) {
                std::vector<std::string> ids;
                for (auto j : sub) ids.push_back(model.components[j].id);
                v.push_back("stratum {" + join(model.strata[s].components, ",") + "}: face {" + join(ids, ",") +
                            "} is not declared");
            }
            if (count > 1 && k >= 3 && sub.size() >= 2) {
                std::vector<std::string> ids;
                for (auto j : sub) ids.push_back(model.components[j].id);
                v.push_back("stratum {" + join(model.strata[s].components, ",") + "}: ambiguous incidence, several strata over {" +
                            join(ids, ",") + "}");
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------- builtins

namespace {

Stratum make_stratum(std::vector<std::string> comps, std::vector<long> poly)
{
    Stratum s;
    s.components = std::move(comps);
    s.count_poly = CountPoly::from_longs(poly);
    s.tdeg = to_long(s.count_poly.leading());
    return s;
}

SncModel cycle_model(const std::string& name, long n)
{
    SncModel m;
    m.name = name;
    m.dimension = 1;
    m.log_smooth = true;
    for (long i = 0; i < n; ++i) m.components.push_back({"E" + std::to_string(i), 1, 0, true, 1});
    for (long i = 0; i < n; ++i) m.strata.push_back(make_stratum({"E" + std::to_string(i)}, {-1, 1}));
    for (long i = 0; i < n; ++i) {
        long j = (i + 1) % n;
        std::vector<std::string> edge{"E" + std::to_string(std::min(i, j)), "E" + std::to_string(std::max(i, j))};
        m.strata.push_back(make_stratum(edge, {1}));
    }
    return m;
}

}  // namespace

SncModel builtin_model(const std::string& name, long param, const BuiltinOptions& opts)
{
    SncModel m;
    if (name == "tate_triangle") {
        m = cycle_model("tate_triangle", 3);
        m.p = 2;
        m.q = 2;
    } else if (name == "kodaira_In") {
        if (param < 2)
            throw std::invalid_argument("kodaira_In needs n >= 2 (a one-component cycle is not a strict normal crossings fibre)");
        m = cycle_model("kodaira_I" + std::to_string(param), param);
    } else if (name == "kodaira_Istar") {
        if (param < 0) throw std::invalid_argument("kodaira_Istar needs r >= 0");
        long r = param;
        m.name = "kodaira_I" + std::to_string(r) + "*";
        m.dimension = 1;
        for (int i = 1; i <= 4; ++i) m.components.push_back({"L" + std::to_string(i), 1, 0, true, 1});
        for (long i = 0; i <= r; ++i) m.components.push_back({"C" + std::to_string(i), 2, -1, true, 1});
        for (int i = 1; i <= 4; ++i) m.strata.push_back(make_stratum({"L" + std::to_string(i)}, {0, 1}));
        for (long i = 0; i <= r; ++i) {
            long nbrs = (r == 0) ? 4 : ((i == 0 || i == r) ? 3 : 2);
            m.strata.push_back(make_stratum({"C" + std::to_string(i)}, {1 - nbrs, 1}));
        }
        std::string end = "C" + std::to_string(r);
        m.strata.push_back(make_stratum({"L1", "C0"}, {1}));
        m.strata.push_back(make_stratum({"L2", "C0"}, {1}));
        m.strata.push_back(make_stratum({"L3", end}, {1}));
        m.strata.push_back(make_stratum({"L4", end}, {1}));
        for (long i = 0; i < r; ++i)
            m.strata.push_back(make_stratum({"C" + std::to_string(i), "C" + std::to_string(i + 1)}, {1}));
    } else if (name == "kodaira_IV") {
        m.name = "kodaira_IV";
        m.dimension = 1;
        m.components.push_back({"C", 3, -1, true, 1});
        for (int i = 1; i <= 3; ++i) m.components.push_back({"L" + std::to_string(i), 1, 0, true, 1});
        m.strata.push_back(make_stratum({"C"}, {-2, 1}));
        for (int i = 1; i <= 3; ++i) m.strata.push_back(make_stratum({"L" + std::to_string(i)}, {0, 1}));
        for (int i = 1; i <= 3; ++i) m.strata.push_back(make_stratum({"C", "L" + std::to_string(i)}, {1}));
    } else {
        throw std::invalid_argument("unknown builtin model '" + name + "'");
    }
    if (opts.p) {
        m.p = *opts.p;
        m.q.reset();
    }
    if (opts.q) m.q = *opts.q;
    if (auto v = validate(m); !v.empty()) throw ValidationError(v);
    return m;
}

// ---------------------------------------------------------------- DualComplex

DualComplex::DualComplex(SncModel model) : model_(std::move(model))
{
    if (auto v = validate(model_); !v.empty()) throw ValidationError(v);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < model_.components.size(); ++i) index[model_.components[i].id] = i;

    std::map<std::vector<std::size_t>, int> seen;
    faces_.resize(model_.strata.size());
    vertex_face_.assign(model_.components.size(), 0);
    for (std::size_t s = 0; s < model_.strata.size(); ++s) {
        Face& f = faces_[s];
        f.index = s;
        for (const auto& id : model_.strata[s].components) f.vertices.push_back(index[id]);
        std::sort(f.vertices.begin(), f.vertices.end());
        std::string label;
        for (auto j : f.vertices) {
            f.N.push_back(model_.components[j].multiplicity);
            f.scale.push_back(model_.components[j].lattice_scale);
            if (!label.empty()) label += "-";
            label += model_.components[j].id;
        }
        int dup = ++seen[f.vertices];
        if (dup > 1) label += "#" + std::to_string(dup);
        f.label = label;
        f.dim = static_cast<int>(f.vertices.size()) - 1;
        if (f.dim == 0) vertex_face_[f.vertices[0]] = s;
    }

    std::map<std::vector<std::size_t>, std::size_t> first_by_set;
    for (std::size_t s = 0; s < faces_.size(); ++s) first_by_set.emplace(faces_[s].vertices, s);
    closure_.resize(faces_.size());
    for (std::size_t s = 0; s < faces_.size(); ++s) {
        const auto& vs = faces_[s].vertices;
        const std::size_t k = vs.size();
        std::vector<std::size_t> cl;
        for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
            std::vector<std::size_t> sub;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (1UL << b)) sub.push_back(vs[b]);
            if (sub.size() == k) cl.push_back(s);
            else cl.push_back(first_by_set.at(sub));
        }
        std::sort(cl.begin(), cl.end(), [&](std::size_t a, std::size_t b) {
            return std::pair(faces_[a].dim, a) < std::pair(faces_[b].dim, b);
        });
        closure_[s] = std::move(cl);
    }
}

std::size_t DualComplex::component_index(const std::string& id) const
{
    for (std::size_t i = 0; i < model_.components.size(); ++i)
        if (model_.components[i].id == id) return i;
    throw std::out_of_range("unknown component '" + id + "'");
}

std::size_t DualComplex::subface(std::size_t i, const std::vector<std::size_t>& vertices) const
{
    for (std::size_t s : closure_.at(i))
        if (faces_[s].vertices == vertices) return s;
    throw std::out_of_range("vertex set is not a face of " + faces_.at(i).label);
}

std::optional<std::size_t> DualComplex::find_face(const std::string& label) const
{
    for (const auto& f : faces_)
        if (f.label == label) return f.index;
    return std::nullopt;
}

int DualComplex::max_dim() const
{
    int d = -1;
    for (const auto& f : faces_) d = std::max(d, f.dim);
    return d;
}

}  // namespace skelmeas
