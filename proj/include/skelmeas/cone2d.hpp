#pragma once

#include "skelmeas/exact.hpp"

#include <array>

namespace skelmeas {

/// Two-dimensional log-regular cone: primitive rays v1, v2 of the dual
/// monoid and the class w of the uniformizer in the character lattice.
struct Cone2D {
    std::array<long, 2> v1{};
    std::array<long, 2> v2{};
    std::array<long, 2> w{};
};

struct Cone2DResult {
    long N1 = 0;  // <w, v1>
    long N2 = 0;  // <w, v2>
    long det = 0;  // |det(v1, v2)|
    long rho = 0;  // root index gcd(w)
    Rat length;    // rho * det / (N1 N2)
};

/// Throws std::invalid_argument for non-primitive or dependent rays and
/// for w outside the interior of the cone.
Cone2DResult cone2d_edge_length(const Cone2D& c);

}  // namespace skelmeas
