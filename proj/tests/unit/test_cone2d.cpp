#include <doctest.h>

#include "skelmeas/cone2d.hpp"
#include "skelmeas/measures.hpp"

#include "support.hpp"

using namespace skelmeas;

TEST_CASE("cone edge data examples")
{
    auto r = cone2d_edge_length({{1, 0}, {0, 1}, {2, 3}});
    CHECK(r.length == make_rat(1, 6));
    CHECK(r.N1 == 2);
    CHECK(r.N2 == 3);
    CHECK(cone2d_edge_length({{1, 0}, {0, 1}, {1, 1}}).length == 1);

    // Rays (0,1), (2,-1) with w = (1,1): pairings 1 and 1, determinant 2.
    auto a1 = cone2d_edge_length({{0, 1}, {2, -1}, {1, 1}});
    CHECK(a1.N1 == 1);
    CHECK(a1.N2 == 1);
    CHECK(a1.det == 2);
    CHECK(a1.rho == 1);
    CHECK(a1.length == 2);

    auto both2 = cone2d_edge_length({{0, 1}, {4, -1}, {1, 2}});
    CHECK(both2.N1 == 2);
    CHECK(both2.N2 == 2);
    CHECK(both2.rho == 1);
    CHECK(both2.length == 1);
}

TEST_CASE("cone validation")
{
    CHECK_THROWS_AS(cone2d_edge_length({{2, 0}, {0, 1}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(cone2d_edge_length({{1, 1}, {2, 2}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(cone2d_edge_length({{1, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(cone2d_edge_length({{1, 0}, {0, 1}, {-1, 2}}), std::invalid_argument);
}

TEST_CASE("snc cones agree with the face volume for N <= 30")
{
    for (long a = 1; a <= 30; ++a)
        for (long b = 1; b <= 30; ++b) CHECK(cone2d_edge_length({{1, 0}, {0, 1}, {a, b}}).length == face_volume({a, b}));
}

TEST_CASE("edge length is invariant under SL2(Z)")
{
    auto g = test::rng(71);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 500; ++trial) {
        Cone2D c{{test::uniform(g, -6, 6), test::uniform(g, -6, 6)},
                 {test::uniform(g, -6, 6), test::uniform(g, -6, 6)},
                 {test::uniform(g, -6, 6), test::uniform(g, -6, 6)}};
        Cone2DResult base;
        try {
            base = cone2d_edge_length(c);
        } catch (const std::invalid_argument&) {
            continue;
        }
        // Random product of elementary matrices: rays map by A, w by A^{-T}.
        long A[2][2] = {{1, 0}, {0, 1}};
        for (int k = 0; k < 4; ++k) {
            long s = test::uniform(g, -3, 3);
            long E[2][2] = {{1, 0}, {0, 1}};
            E[k % 2][(k + 1) % 2] = s;
            long P[2][2];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) P[i][j] = E[i][0] * A[0][j] + E[i][1] * A[1][j];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) A[i][j] = P[i][j];
        }
        REQUIRE(A[0][0] * A[1][1] - A[0][1] * A[1][0] == 1);
        long inv_t[2][2] = {{A[1][1], -A[1][0]}, {-A[0][1], A[0][0]}};
        auto apply = [](long M[2][2], std::array<long, 2> v) {
            return std::array<long, 2>{M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1]};
        };
        Cone2D moved{apply(A, c.v1), apply(A, c.v2), apply(inv_t, c.w)};
        auto r = cone2d_edge_length(moved);
        CHECK(r.length == base.length);
        CHECK(r.N1 == base.N1);
        CHECK(r.N2 == base.N2);
        CHECK(r.det == base.det);
        CHECK(r.rho == base.rho);
        ++tested;
    }
    CHECK(tested >= 100);
}
