#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "nashtoric/cone.hpp"
#include "test_util.hpp"

using namespace nashtoric;

namespace {

Cone example_cone(long e) {
    return make_cone({Vec{Int(1), Int(0), Int(0)}, Vec{Int(0), Int(1), Int(0)},
                      Vec{Int(1), Int(1), Int(e)}},
                     3);
}

// Exhaustive membership oracle for simplicial cones: nonnegative rational
// coordinates in the ray basis.
bool member_oracle(const Cone& c, const Vec& v) {
    Mat r((std::size_t)c.rank, c.rays.size());
    for (std::size_t j = 0; j < c.rays.size(); ++j)
        for (std::size_t i = 0; i < (std::size_t)c.rank; ++i) r(i, j) = c.rays[j][i];
    QVec b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = Rat(v[i]);
    auto x = solve_unique(r, b);
    if (!x) return false;
    for (const Rat& q : *x)
        if (q < 0) return false;
    return true;
}

}  // namespace

TEST_CASE("make_cone validation") {
    CHECK_THROWS_AS(make_cone({Vec{Int(1), Int(0)}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_cone({Vec{Int(1), Int(0)}, Vec{Int(-1), Int(0)},
                               Vec{Int(0), Int(1)}}, 2),
                    std::invalid_argument);
    // Non-extremal generators are dropped, multiples deduplicated.
    Cone c = make_cone({Vec{Int(1), Int(0)}, Vec{Int(1), Int(1)}, Vec{Int(0), Int(1)},
                        Vec{Int(0), Int(3)}}, 2);
    CHECK(c.rays == std::vector<Vec>{Vec{Int(0), Int(1)}, Vec{Int(1), Int(0)}});
}

TEST_CASE("containment agrees with the coordinate oracle on simplicial cones") {
    std::mt19937_64 rng(testutil::test_seed() + 10);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + (int)(rng() % 2);
        Cone c = testutil::random_cone(rng, n, 0, 4);
        if ((int)c.rays.size() != n) continue;
        for (int k = 0; k < 30; ++k) {
            Vec v = testutil::random_vec(rng, n, -8, 8);
            CHECK(contains(c, v) == member_oracle(c, v));
        }
    }
}

TEST_CASE("face lattice of the quadrant") {
    Cone c = make_cone({Vec{Int(1), Int(0)}, Vec{Int(0), Int(1)}}, 2);
    auto fs = faces(c);
    REQUIRE(fs.size() == 4);  // zero face, two rays, the cone
    CHECK(fs[0].dim == 0);
    CHECK(fs[1].dim == 1);
    CHECK(fs[2].dim == 1);
    CHECK(fs[3].dim == 2);
    for (const Face& f : fs) CHECK(is_regular(f));
}

TEST_CASE("smallest_face_containing is the face whose relative interior holds v") {
    std::mt19937_64 rng(testutil::test_seed() + 11);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + (int)(rng() % 2);
        Cone c = testutil::random_cone(rng, n, (int)(rng() % 2), 3);
        for (int k = 0; k < 20; ++k) {
            Vec v = testutil::random_point_in(rng, c, 2);
            Face f = smallest_face_containing(c, v);
            CHECK(in_relative_interior(f, v));
            // Minimality: no face of strictly smaller dimension contains v.
            for (const Face& g : faces(c)) {
                bool cont = true;
                for (const Vec& u : g.parent_normals) {
                    bool vanishes = true;
                    for (const Vec& r : g.rays)
                        if (dot(r, u) != 0) { vanishes = false; break; }
                    if (vanishes && dot(v, u) != 0) { cont = false; break; }
                }
                if (cont && contains(c, v)) CHECK(g.dim >= f.dim);
            }
        }
    }
}

TEST_CASE("multiplicity equals the parallelepiped lattice point count") {
    std::mt19937_64 rng(testutil::test_seed() + 12);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + (int)(rng() % 2);
        Cone c = testutil::random_cone(rng, n, 0, 3);
        if ((int)c.rays.size() != n) continue;
        Int mult = multiplicity(cone_as_face(c));
        // Count lattice points in { sum c_i r_i : 0 <= c_i < 1 } over a box
        // with per-coordinate bounds |v_i| <= sum_j |r_j[i]|.
        Mat r((std::size_t)n, (std::size_t)n);
        for (std::size_t j = 0; j < (std::size_t)n; ++j)
            for (std::size_t i = 0; i < (std::size_t)n; ++i) r(i, j) = c.rays[j][i];
        QMat rinv = rational_inverse(r);
        std::vector<long> bound((std::size_t)n, 0);
        for (int i = 0; i < n; ++i) {
            Int b = 0;
            for (const Vec& ray : c.rays) b += abs(ray[(std::size_t)i]);
            bound[(std::size_t)i] = b.get_si();
        }
        long count = 0;
        std::vector<long> idx((std::size_t)n);
        for (int i = 0; i < n; ++i) idx[(std::size_t)i] = -bound[(std::size_t)i];
        for (;;) {
            bool inside = true;
            for (int i = 0; i < n && inside; ++i) {
                Rat co = 0;
                for (int j = 0; j < n; ++j)
                    co += rinv((std::size_t)i, (std::size_t)j) * Rat(idx[(std::size_t)j]);
                if (co < 0 || co >= 1) inside = false;
            }
            if (inside) ++count;
            std::size_t k = 0;
            while (k < (std::size_t)n) {
                if (++idx[k] <= bound[k]) break;
                idx[k] = -bound[k];
                ++k;
            }
            if (k == (std::size_t)n) break;
        }
        CHECK(mult == Int(count));
    }
}

TEST_CASE("regularity detection") {
    Cone quadrant = make_cone({Vec{Int(1), Int(0)}, Vec{Int(0), Int(1)}}, 2);
    CHECK(is_regular_cone(quadrant));
    Cone a1 = make_cone({Vec{Int(1), Int(0)}, Vec{Int(1), Int(2)}}, 2);
    CHECK_FALSE(is_regular_cone(a1));
    CHECK(multiplicity(cone_as_face(a1)) == 2);
}

TEST_CASE("3-dimensional example has only regular proper faces and singular top") {
    for (long e : {2L, 3L, 5L}) {
        Cone c = example_cone(e);
        auto sing = singular_faces(c);
        REQUIRE(sing.size() == 1);
        CHECK(sing[0].dim == 3);
        CHECK(multiplicity(sing[0]) == Int(e));
    }
}
