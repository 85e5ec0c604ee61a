#include "skelmeas/model.hpp"

#include <sstream>

#include "toml_reader.hpp"

namespace skelmeas {

namespace {

Component read_component(const toml::table& t)
{
    TableReader r(t, "[[component]]");
    r.allow({"id", "multiplicity", "theta_order", "separable", "lattice_scale"});
    Component c;
    c.id = r.required_string("id");
    c.multiplicity = r.required_int("multiplicity");
    c.theta_order = r.required_int("theta_order");
    c.separable = r.optional_bool("separable", true);
    c.lattice_scale = r.optional_int("lattice_scale", 1);
    return c;
}

Stratum read_stratum(const toml::table& t)
{
    TableReader r(t, "[[stratum]]");
    r.allow({"components", "count_poly", "tdeg", "split_degree", "horizontal"});
    Stratum s;
    s.components = r.required_string_array("components");
    std::vector<Int> coeffs;
    for (const auto& v : r.required_rational_array("count_poly")) {
        if (!is_integer(v)) throw ParseError("count_poly coefficients must be integers", r.line("count_poly"));
        coeffs.push_back(v.get_num());
    }
    s.count_poly = CountPoly(std::move(coeffs));
    s.tdeg = r.optional_int("tdeg", 1);
    s.split_degree = r.optional_int("split_degree", 1);
    s.horizontal = r.optional_bool("horizontal", false);
    return s;
}

SncModel read_model(const toml::table& root)
{
    TableReader top(root, "document");
    top.allow({"model", "component", "stratum"});
    const toml::table& mt = top.required_table("model");
    TableReader r(mt, "[model]");
    r.allow({"name", "dimension", "p", "q", "m", "log_smooth"});
    SncModel m;
    m.name = r.required_string("name");
    m.dimension = static_cast<int>(r.required_int("dimension"));
    m.p = r.optional_int("p", 1);
    if (r.has("q")) m.q = r.required_int("q");
    m.m = r.optional_int("m", 1);
    m.log_smooth = r.optional_bool("log_smooth", false);
    for (const toml::table* ct : top.table_array("component")) m.components.push_back(read_component(*ct));
    for (const toml::table* st : top.table_array("stratum")) m.strata.push_back(read_stratum(*st));
    return m;
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string int_literal(const Int& v)
{
    if (v.fits_slong_p()) return v.get_str();
    return quote(v.get_str());
}

}  // namespace

SncModel parse_model(const std::string& text)
{
    SncModel m = read_model(parse_document(text));
    if (auto v = validate(m); !v.empty()) throw ValidationError(v);
    return m;
}

SncModel load_model_file(const std::string& path)
{
    return parse_model(read_text_file(path));
}

std::string serialize_model(const SncModel& m)
{
    std::ostringstream out;
    out << "[model]\n";
    out << "name = " << quote(m.name) << "\n";
    out << "dimension = " << m.dimension << "\n";
    out << "p = " << m.p << "\n";
    if (m.q) out << "q = " << *m.q << "\n";
    out << "m = " << m.m << "\n";
    out << "log_smooth = " << (m.log_smooth ? "true" : "false") << "\n";
    for (const auto& c : m.components) {
        out << "\n[[component]]\n";
        out << "id = " << quote(c.id) << "\n";
        out << "multiplicity = " << c.multiplicity << "\n";
        out << "theta_order = " << c.theta_order << "\n";
        out << "separable = " << (c.separable ? "true" : "false") << "\n";
        if (c.lattice_scale != 1) out << "lattice_scale = " << c.lattice_scale << "\n";
    }
    for (const auto& s : m.strata) {
        out << "\n[[stratum]]\n";
        out << "components = [";
        for (std::size_t i = 0; i < s.components.size(); ++i) out << (i ? ", " : "") << quote(s.components[i]);
        out << "]\n";
        out << "count_poly = [";
        const auto& cs = s.count_poly.coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i) out << (i ? ", " : "") << int_literal(cs[i]);
        out << "]\n";
        out << "tdeg = " << s.tdeg << "\n";
        out << "split_degree = " << s.split_degree << "\n";
        out << "horizontal = " << (s.horizontal ? "true" : "false") << "\n";
    }
    return out.str();
}

}  // namespace skelmeas
