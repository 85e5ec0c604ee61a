#pragma once

#include "skelmeas/exact.hpp"
#include "skelmeas/model.hpp"

#include <string>
#include <vector>

namespace skelmeas {

/// A point of the dual complex: face index plus coordinates u_j aligned
/// with face.vertices. Points produced by this library sit on their
/// minimal face (all u_j > 0).
struct SkPoint {
    std::size_t face = 0;
    std::vector<Rat> u;
    bool operator==(const SkPoint&) const = default;
};

/// Downward-closed set of faces. dim is -1 when empty.
struct SubComplex {
    std::vector<std::size_t> faces;  // sorted by (dim, index)
    int dim = -1;
    bool empty() const { return faces.empty(); }
    bool contains(std::size_t face) const;
    bool operator==(const SubComplex&) const = default;
};

SubComplex full_complex(const DualComplex& dc);
/// Closure of the given faces.
SubComplex close_downward(const DualComplex& dc, const std::vector<std::size_t>& faces);
/// Faces of maximal dimension dim(c).
std::vector<std::size_t> top_faces(const DualComplex& dc, const SubComplex& c);

/// Moves a point to its minimal face, dropping zero coordinates.
SkPoint canonical_point(const DualComplex& dc, const SkPoint& x);
std::string point_coords(const DualComplex& dc, const SkPoint& x);

/// (1/m) sum w_j u_j
Rat weight_at(const DualComplex& dc, const SkPoint& x);
Rat vertex_weight(const DualComplex& dc, std::size_t component);
Rat min_weight(const DualComplex& dc);
SubComplex ks_skeleton(const DualComplex& dc);

/// Root index of the face monoid; gcd(N) for snc faces.
Int root_index(const std::vector<long>& N, const std::vector<long>& scale);
Int root_index(const Face& f);

/// (1/e)Z-integral points of c, each reported once on its minimal face,
/// ordered by (face dim, face index) then lexicographically.
std::vector<SkPoint> lattice_points(const DualComplex& dc, const SubComplex& c, long e);
/// Interior (1/e)Z-points of one face.
std::vector<SkPoint> face_interior_points(const DualComplex& dc, std::size_t face, long e);

bool is_Zp_integral(const DualComplex& dc, const SkPoint& x, long p);
SubComplex temperate_part(const DualComplex& dc, const SubComplex& base);
long tame_degree(const DualComplex& dc, const SkPoint& x);

/// Lattice distance along an edge (or at a vertex) from the vertex of the
/// given component: (1 - N_i u_i) * length(edge).
Rat edge_distance_from_vertex(const DualComplex& dc, const SkPoint& x, std::size_t component);

}  // namespace skelmeas
