#include "skelmeas/cone2d.hpp"

#include <stdexcept>

namespace skelmeas {

Cone2DResult cone2d_edge_length(const Cone2D& c)
{
    if (gcd_l(c.v1[0], c.v1[1]) != 1 || gcd_l(c.v2[0], c.v2[1]) != 1)
        throw std::invalid_argument("cone rays must be primitive");
    long det = c.v1[0] * c.v2[1] - c.v1[1] * c.v2[0];
    if (det == 0) throw std::invalid_argument("cone rays are linearly dependent");
    Cone2DResult r;
    r.N1 = c.w[0] * c.v1[0] + c.w[1] * c.v1[1];
    r.N2 = c.w[0] * c.v2[0] + c.w[1] * c.v2[1];
    if (r.N1 <= 0 || r.N2 <= 0) throw std::invalid_argument("uniformizer class lies outside the cone interior");
    r.det = det < 0 ? -det : det;
    r.rho = gcd_l(c.w[0], c.w[1]);
    r.length = make_rat(r.rho * r.det, r.N1 * r.N2);
    return r;
}

}  // namespace skelmeas
