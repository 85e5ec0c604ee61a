#pragma once

#include "skelmeas/exact.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skelmeas {

struct Component {
    std::string id;
    long multiplicity = 1;  // N
    long theta_order = 0;   // w
    bool separable = true;
    /// c_j: a point is integral iff c_j * u_j is an integer. 1 for snc
    /// models; larger after a ramified base change.
    long lattice_scale = 1;
    bool operator==(const Component&) const = default;
};

struct Stratum {
    std::vector<std::string> components;  // J
    CountPoly count_poly;                 // |E^o|(t)
    long tdeg = 1;
    long split_degree = 1;  // f0
    bool horizontal = false;
    bool operator==(const Stratum&) const = default;
};

struct SncModel {
    std::string name;
    int dimension = 1;  // n
    long p = 1;         // residue characteristic, 1 for char 0
    std::optional<long> q;
    long m = 1;
    bool log_smooth = false;
    std::vector<Component> components;
    std::vector<Stratum> strata;
    bool operator==(const SncModel&) const = default;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, long line) : std::runtime_error(msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// All violated invariants; empty means the model is valid.
std::vector<std::string> validate(const SncModel& model);

bool is_prime(long n);

/// Throws ParseError on syntax or schema errors and ValidationError when
/// the parsed model violates invariants. JSON is accepted when the text
/// starts with '{'.
SncModel parse_model(const std::string& text);
SncModel load_model_file(const std::string& path);
std::string serialize_model(const SncModel& model);

/// Overrides for builtin fixtures. tate_triangle defaults to p = q = 2,
/// the others to p = 1 with no q.
struct BuiltinOptions {
    std::optional<long> p;
    std::optional<long> q;
};

/// tate_triangle, kodaira_In (param n >= 2), kodaira_Istar (param r >= 0),
/// kodaira_IV.
SncModel builtin_model(const std::string& name, long param = -1, const BuiltinOptions& opts = {});

/// A stratum of the model seen as a simplex of the dual complex.
struct Face {
    std::size_t index = 0;              // stratum index
    std::vector<std::size_t> vertices;  // component indices, ascending
    std::vector<long> N;
    std::vector<long> scale;
    int dim = 0;
    std::string label;
};

/// A validated model together with its face incidence data.
class DualComplex {
public:
    explicit DualComplex(SncModel model);

    const SncModel& model() const { return model_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(std::size_t i) const { return faces_.at(i); }
    const Stratum& stratum(std::size_t i) const { return model_.strata.at(i); }
    std::size_t num_components() const { return model_.components.size(); }
    const Component& component(std::size_t j) const { return model_.components.at(j); }
    std::size_t component_index(const std::string& id) const;
    /// Face index of the singleton stratum of component j.
    std::size_t vertex_face(std::size_t j) const { return vertex_face_.at(j); }
    /// Faces of the closure of face i, including i itself.
    const std::vector<std::size_t>& closure(std::size_t i) const { return closure_.at(i); }
    /// Face of the closure of face i spanned by the given component subset.
    std::size_t subface(std::size_t i, const std::vector<std::size_t>& vertices) const;
    std::optional<std::size_t> find_face(const std::string& label) const;
    int max_dim() const;

private:
    SncModel model_;
    std::vector<Face> faces_;
    std::vector<std::size_t> vertex_face_;
    std::vector<std::vector<std::size_t>> closure_;
};

}  // namespace skelmeas
