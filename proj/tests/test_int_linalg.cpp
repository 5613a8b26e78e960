#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nashtoric/int_linalg.hpp"
#include "test_util.hpp"

using namespace nashtoric;

namespace {

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(d(rng));
    return m;
}

bool is_unimodular(const Mat& u) {
    Int d = det(u);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("hermite normal form reconstructs the input") {
    std::mt19937_64 rng(testutil::test_seed());
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Mat m = random_mat(rng, r, c, 9);
        auto [h, u] = hermite_normal_form(m);
        REQUIRE(u.rows == r);
        CHECK(is_unimodular(u));
        CHECK(mat_mul(u, m) == h);
        // Row echelon with positive pivots and reduced entries above them.
        std::size_t last_pivot_col = 0;
        bool seen_zero_row = false;
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t j = 0;
            while (j < c && h(i, j) == 0) ++j;
            if (j == c) {
                seen_zero_row = true;
                continue;
            }
            CHECK_FALSE(seen_zero_row);
            CHECK(h(i, j) > 0);
            if (i > 0) CHECK(j > last_pivot_col);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h(k, j) >= 0);
                CHECK(h(k, j) < h(i, j));
            }
            last_pivot_col = j;
        }
    }
}

TEST_CASE("smith normal form: diagonal, divisibility, reconstruction") {
    std::mt19937_64 rng(testutil::test_seed() + 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Mat m = random_mat(rng, r, c, 9);
        auto [d, u, v] = smith_normal_form(m);
        CHECK(is_unimodular(u));
        CHECK(is_unimodular(v));
        CHECK(mat_mul(mat_mul(u, m), v) == d);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(d(i, j) == 0);
        std::size_t k = std::min(r, c);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            CHECK(d(i, i) >= 0);
            if (d(i, i) == 0) CHECK(d(i + 1, i + 1) == 0);
            else CHECK(d(i + 1, i + 1) % d(i, i) == 0);
        }
    }
}

TEST_CASE("rank agrees with rational row reduction") {
    std::mt19937_64 rng(testutil::test_seed() + 2);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Mat m = random_mat(rng, r, c, 6);
        QMat q(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) q(i, j) = Rat(m(i, j));
        CHECK(rank_of(m) == rref(q).size());
    }
}

TEST_CASE("determinant by Bareiss matches cofactor expansion on 3x3") {
    std::mt19937_64 rng(testutil::test_seed() + 3);
    for (int trial = 0; trial < 100; ++trial) {
        Mat m = random_mat(rng, 3, 3, 8);
        Int cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                  m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        CHECK(det(m) == cof);
    }
}

TEST_CASE("inverse_unimodular and rational_inverse round-trip") {
    std::mt19937_64 rng(testutil::test_seed() + 4);
    int done = 0;
    while (done < 50) {
        Mat m = random_mat(rng, 3, 3, 4);
        Int d = det(m);
        if (d == 0) continue;
        QMat qi = rational_inverse(m);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                Rat s = 0;
                for (std::size_t k = 0; k < 3; ++k) s += Rat(m(i, k)) * qi(k, j);
                CHECK(s == (i == j ? Rat(1) : Rat(0)));
            }
        if (d == 1 || d == -1) {
            Mat mi = inverse_unimodular(m);
            CHECK(mat_mul(m, mi) == Mat::identity(3));
            CHECK(mat_mul(mi, m) == Mat::identity(3));
        }
        ++done;
    }
}

TEST_CASE("primitive_part divides out the content") {
    CHECK(primitive_part(Vec{Int(2), Int(4), Int(-6)}) == Vec{Int(1), Int(2), Int(-3)});
    CHECK(primitive_part(Vec{Int(0), Int(-5)}) == Vec{Int(0), Int(-1)});
    CHECK_THROWS_AS(primitive_part(Vec{Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("primitive kernel vector is in the kernel and primitive") {
    std::mt19937_64 rng(testutil::test_seed() + 5);
    int done = 0;
    while (done < 50) {
        Mat m = random_mat(rng, 2, 3, 5);
        if (rank_of(m) != 2) continue;
        std::vector<Vec> rows = {Vec{m(0, 0), m(0, 1), m(0, 2)},
                                 Vec{m(1, 0), m(1, 1), m(1, 2)}};
        auto k = primitive_kernel_vector(rows, 3);
        REQUIRE(k.has_value());
        CHECK(primitive_part(*k) == *k);
        for (std::size_t i = 0; i < 2; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * (*k)[j];
            CHECK(s == 0);
        }
        ++done;
    }
}

TEST_CASE("facet normals: nonnegative on rays, tight on a facet, reject bad input") {
    // Quadrant.
    auto ns = facet_normals({Vec{Int(1), Int(0)}, Vec{Int(0), Int(1)}});
    CHECK(ns == std::vector<Vec>{Vec{Int(0), Int(1)}, Vec{Int(1), Int(0)}});
    // Non-strongly-convex (contains a line).
    CHECK_THROWS_AS(facet_normals({Vec{Int(1), Int(0)}, Vec{Int(-1), Int(0)},
                                   Vec{Int(0), Int(1)}}),
                    std::invalid_argument);
    // Not full-dimensional.
    CHECK_THROWS_AS(facet_normals({Vec{Int(1), Int(0)}}), std::invalid_argument);
}

TEST_CASE("facet normals transform contravariantly under unimodular maps") {
    std::mt19937_64 rng(testutil::test_seed() + 6);
    int done = 0;
    while (done < 40) {
        Mat g = random_mat(rng, 3, 3, 2);
        Int d = det(g);
        if (d != 1 && d != -1) continue;
        Cone c = testutil::random_cone(rng, 3, 1, 3);
        std::vector<Vec> mapped;
        for (const Vec& r : c.rays) mapped.push_back(mat_vec(g, r));
        Cone c2;
        try {
            c2 = make_cone(mapped, 3);
        } catch (const std::invalid_argument&) {
            continue;  // mapped generators can exceed supported complexity
        }
        // Same number of facets; each mapped normal is a normal of c2.
        REQUIRE(c2.normals.size() == c.normals.size());
        Mat gt(3, 3);
        Mat gi = inverse_unimodular(g);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) gt(i, j) = gi(j, i);
        std::vector<Vec> expect;
        for (const Vec& u : c.normals) expect.push_back(mat_vec(gt, u));
        std::sort(expect.begin(), expect.end(), lex_less);
        CHECK(expect == c2.normals);
        ++done;
    }
}
