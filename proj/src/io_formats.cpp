// TOML readers for test-function families and weighted-sum specs.

#include "skelmeas/convergence.hpp"
#include "skelmeas/measures.hpp"

#include <filesystem>

#include "toml_reader.hpp"

namespace skelmeas {

namespace {

AffineFn read_global(const DualComplex& dc, const TableReader& r)
{
    AffineFn fn;
    if (r.has("constant")) fn.constant = r.required_rational("constant");
    if (r.has("coefficients")) {
        const toml::table& coeffs = r.required_table("coefficients");
        TableReader cr(coeffs, "coefficients");
        for (const auto& [key, node] : coeffs) {
            std::string id(key.str());
            std::size_t j;
            try {
                j = dc.component_index(id);
            } catch (const std::out_of_range&) {
                cr.fail(id, "unknown component '" + id + "'");
            }
            fn.coeff[j] = cr.rational_of(node, id);
        }
    }
    return fn;
}

}  // namespace

std::vector<TestFunction> parse_test_functions(const DualComplex& dc, const std::string& text)
{
    toml::table root = parse_document(text);
    TableReader top(root, "document");
    top.allow({"function"});
    std::vector<TestFunction> out;
    for (const toml::table* ft : top.table_array("function")) {
        TableReader r(*ft, "[[function]]");
        r.allow({"name", "constant", "coefficients", "face"});
        TestFunction phi;
        phi.name = r.required_string("name");
        if (r.has("constant") || r.has("coefficients")) phi.global = read_global(dc, r);
        for (const toml::table* pt : r.table_array("face")) {
            TableReader fr(*pt, "[[function.face]]");
            fr.allow({"face", "coefficients"});
            std::string label = fr.required_string("face");
            auto fi = dc.find_face(label);
            if (!fi) fr.fail("face", "unknown face '" + label + "'");
            const Face& f = dc.face(*fi);
            auto coeffs = fr.required_rational_array("coefficients");
            if (coeffs.size() != f.vertices.size() + 1)
                fr.fail("coefficients", "face " + label + " needs " + std::to_string(f.vertices.size() + 1) +
                                            " coefficients (constant, then one per vertex)");
            AffineFn fn;
            fn.constant = coeffs[0];
            for (std::size_t k = 0; k < f.vertices.size(); ++k) fn.coeff[f.vertices[k]] = coeffs[k + 1];
            phi.per_face[*fi] = fn;
        }
        if (!phi.global && phi.per_face.empty()) r.fail("name", "function '" + phi.name + "' defines nothing");
        out.push_back(std::move(phi));
    }
    if (out.empty()) throw ParseError("no [[function]] entries", 0);
    for (const auto& phi : out)
        if (auto issues = check_consistency(dc, phi); !issues.empty()) throw ParseError(issues.front(), 0);
    return out;
}

std::vector<TestFunction> load_test_functions(const DualComplex& dc, const std::string& path)
{
    return parse_test_functions(dc, read_text_file(path));
}

WeightedSumSpec parse_lemma_spec(const std::string& text, const std::string& base_dir)
{
    toml::table root = parse_document(text);
    TableReader top(root, "document");
    top.allow({"lemma"});
    TableReader r(top.required_table("lemma"), "[lemma]");
    r.allow({"variables", "box", "model", "face", "alpha", "offset", "phi", "r", "p"});
    WeightedSumSpec s;
    s.alpha = r.required_rational_array("alpha");
    const std::size_t n = s.alpha.size();
    s.offset = r.has("offset") ? r.required_rational_array("offset") : std::vector<Rat>(n, Rat(0));
    s.r = r.has("r") ? r.required_rational("r") : Rat(2);
    if (r.has("p")) s.p = r.required_int("p");

    if (r.has("box") == r.has("model")) r.fail("box", "give exactly one of 'box' or 'model'");
    if (r.has("box")) {
        for (const auto& node : r.required_array("box")) {
            const toml::array* pair = node.as_array();
            if (!pair || pair->size() != 2) r.fail("box", "box entries must be [lo, hi] pairs");
            s.box.emplace_back(r.rational_of(*pair->get(0), "box"), r.rational_of(*pair->get(1), "box"));
        }
        if (r.has("variables")) {
            s.variables = r.required_string_array("variables");
        } else {
            for (std::size_t j = 0; j < n; ++j) s.variables.push_back("x" + std::to_string(j + 1));
        }
    } else {
        std::filesystem::path mp(r.required_string("model"));
        if (mp.is_relative()) mp = std::filesystem::path(base_dir) / mp;
        auto dc = std::make_shared<DualComplex>(load_model_file(mp.string()));
        std::string label = r.required_string("face");
        auto fi = dc->find_face(label);
        if (!fi) r.fail("face", "unknown face '" + label + "'");
        s.complex = dc;
        s.face = *fi;
        for (std::size_t j : dc->face(*fi).vertices) s.variables.push_back(dc->component(j).id);
        if (r.has("variables")) r.fail("variables", "face specs use the component ids as variables");
    }
    try {
        s.phi = parse_polynomial(r.optional_string("phi").value_or("1"), s.variables);
        check_spec(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("[lemma]: ") + e.what(), 0);
    }
    return s;
}

WeightedSumSpec load_lemma_spec(const std::string& path)
{
    auto dir = std::filesystem::path(path).parent_path().string();
    return parse_lemma_spec(read_text_file(path), dir.empty() ? "." : dir);
}

}  // namespace skelmeas
