// Exact integer and rational linear algebra on top of GMP.
//
// Everything here is arbitrary precision; no floating point is used
// anywhere in the library.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashtoric {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline constexpr int kDefaultMaxRank = 6;

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a;  // row major

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {
        if (r == 0 || c == 0)
            throw std::invalid_argument("Mat: dimensions must be positive");
    }
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat from_rows(const std::vector<Vec>& rs) {
        if (rs.empty()) throw std::invalid_argument("Mat: empty row list");
        Mat m(rs.size(), rs[0].size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != m.cols)
                throw std::invalid_argument("Mat: ragged rows");
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
        }
        return m;
    }
    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const {
        return a[i * cols + j];
    }
    Vec row(std::size_t i) const {
        return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }
    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& v = x(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
        }
    return z;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec r(m.rows, Int(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline Int dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: rank mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline Vec vec_add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vec_add: rank mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vec vec_sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vec_sub: rank mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline Vec vec_scale(const Int& k, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = k * x[i];
    return r;
}

inline Vec vec_neg(const Vec& x) { return vec_scale(Int(-1), x); }

inline bool is_zero(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

// Lexicographic order used for every deterministic tie-break in the library.
inline bool lex_less(const Vec& x, const Vec& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

inline std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

// v / gcd(v); errors on the zero vector.
inline Vec primitive_part(const Vec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0)
        throw std::invalid_argument("zero vector has no primitive part");
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style): returns (h, u) with u unimodular,
// u*m = h, h upper echelon with positive pivots and reduced entries above.
// ---------------------------------------------------------------------------

inline std::pair<Mat, Mat> hermite_normal_form(const Mat& m) {
    Mat h = m;
    Mat u = Mat::identity(m.rows);
    std::size_t pr = 0;  // pivot row
    for (std::size_t c = 0; c < h.cols && pr < h.rows; ++c) {
        // Clear the column below pr with the Euclidean algorithm on rows.
        for (std::size_t r = pr + 1; r < h.rows; ++r) {
            while (h(r, c) != 0) {
                if (h(pr, c) == 0) {
                    for (std::size_t j = 0; j < h.cols; ++j)
                        std::swap(h(pr, j), h(r, j));
                    for (std::size_t j = 0; j < u.cols; ++j)
                        std::swap(u(pr, j), u(r, j));
                    break;
                }
                Int q = h(r, c) / h(pr, c);  // truncated division is fine here
                for (std::size_t j = 0; j < h.cols; ++j)
                    h(r, j) -= q * h(pr, j);
                for (std::size_t j = 0; j < u.cols; ++j)
                    u(r, j) -= q * u(pr, j);
                if (h(r, c) != 0) {
                    for (std::size_t j = 0; j < h.cols; ++j)
                        std::swap(h(pr, j), h(r, j));
                    for (std::size_t j = 0; j < u.cols; ++j)
                        std::swap(u(pr, j), u(r, j));
                }
            }
        }
        if (h(pr, c) == 0) continue;
        if (h(pr, c) < 0) {
            for (std::size_t j = 0; j < h.cols; ++j) h(pr, j) = -h(pr, j);
            for (std::size_t j = 0; j < u.cols; ++j) u(pr, j) = -u(pr, j);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for (std::size_t r = 0; r < pr; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), h(pr, c).get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = 0; j < h.cols; ++j) h(r, j) -= q * h(pr, j);
            for (std::size_t j = 0; j < u.cols; ++j) u(r, j) -= q * u(pr, j);
        }
        ++pr;
    }
    return {h, u};
}

inline std::size_t rank_of(const Mat& m) {
    Mat h = hermite_normal_form(m).first;
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows; ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < h.cols; ++j)
            if (h(i, j) != 0) { nz = true; break; }
        if (nz) ++r;
    }
    return r;
}

inline std::size_t rank_of_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    return rank_of(Mat::from_rows(rows));
}

// ---------------------------------------------------------------------------
// Smith normal form: u*m*v = d with u, v unimodular and d diagonal,
// d1 | d2 | ... ; nonnegative invariant factors.
// ---------------------------------------------------------------------------

inline std::tuple<Mat, Mat, Mat> smith_normal_form(const Mat& m) {
    Mat d = m;
    Mat u = Mat::identity(m.rows);
    Mat v = Mat::identity(m.cols);

    auto row_op = [&](std::size_t r1, std::size_t r2, const Int& q) {
        // r2 -= q*r1
        for (std::size_t j = 0; j < d.cols; ++j) d(r2, j) -= q * d(r1, j);
        for (std::size_t j = 0; j < u.cols; ++j) u(r2, j) -= q * u(r1, j);
    };
    auto col_op = [&](std::size_t c1, std::size_t c2, const Int& q) {
        // c2 -= q*c1
        for (std::size_t i = 0; i < d.rows; ++i) d(i, c2) -= q * d(i, c1);
        for (std::size_t i = 0; i < v.rows; ++i) v(i, c2) -= q * v(i, c1);
    };
    auto row_swap = [&](std::size_t r1, std::size_t r2) {
        for (std::size_t j = 0; j < d.cols; ++j) std::swap(d(r1, j), d(r2, j));
        for (std::size_t j = 0; j < u.cols; ++j) std::swap(u(r1, j), u(r2, j));
    };
    auto col_swap = [&](std::size_t c1, std::size_t c2) {
        for (std::size_t i = 0; i < d.rows; ++i) std::swap(d(i, c1), d(i, c2));
        for (std::size_t i = 0; i < v.rows; ++i) std::swap(v(i, c1), v(i, c2));
    };

    std::size_t n = std::min(d.rows, d.cols);
    for (std::size_t k = 0; k < n; ++k) {
        // Move a nonzero entry of minimal absolute value to (k,k).
        for (;;) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = k; i < d.rows; ++i)
                for (std::size_t j = k; j < d.cols; ++j)
                    if (d(i, j) != 0 &&
                        (!best || cmp(abs(d(i, j)), abs(d(best->first, best->second))) < 0))
                        best = {{i, j}};
            if (!best) goto normalize;
            if (best->first != k) row_swap(k, best->first);
            if (best->second != k) col_swap(k, best->second);
            bool clean = true;
            for (std::size_t i = k + 1; i < d.rows; ++i)
                if (d(i, k) != 0) {
                    Int q = d(i, k) / d(k, k);
                    row_op(k, i, q);
                    if (d(i, k) != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < d.cols; ++j)
                if (d(k, j) != 0) {
                    Int q = d(k, j) / d(k, k);
                    col_op(k, j, q);
                    if (d(k, j) != 0) clean = false;
                }
            if (!clean) continue;
            // Pivot must divide every remaining entry; if not, mix the
            // offending row in and restart the reduction at k.
            bool divides = true;
            for (std::size_t i = k + 1; i < d.rows && divides; ++i)
                for (std::size_t j = k + 1; j < d.cols && divides; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        row_op(i, k, Int(-1));
                        divides = false;
                    }
            if (divides) break;
        }
    }
normalize:
    for (std::size_t k = 0; k < n; ++k)
        if (d(k, k) < 0) {
            for (std::size_t j = 0; j < d.cols; ++j) d(k, j) = -d(k, j);
            for (std::size_t j = 0; j < u.cols; ++j) u(k, j) = -u(k, j);
        }
    return {d, u, v};
}

// Invariant factors (nonzero diagonal of the SNF) of the row lattice.
inline std::vector<Int> invariant_factors(const Mat& m) {
    Mat d = std::get<0>(smith_normal_form(m));
    std::vector<Int> f;
    for (std::size_t k = 0; k < std::min(d.rows, d.cols); ++k)
        if (d(k, k) != 0) f.push_back(d(k, k));
    return f;
}

// ---------------------------------------------------------------------------
// Rational elimination: solve, inverse, nullspace.
// ---------------------------------------------------------------------------

struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    explicit QMat(const Mat& m) : rows(m.rows), cols(m.cols), a(m.rows * m.cols) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = Rat(m.a[i]);
    }
    Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const {
        return a[i * cols + j];
    }
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Unique solution of a full-column-rank system a*x = b; nullopt if
// inconsistent, throws if the solution is not unique.
inline std::optional<QVec> solve_unique(const Mat& a, const QVec& b) {
    QMat m(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = Rat(a(i, j));
        m(i, a.cols) = b[i];
    }
    auto pivots = rref(m);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        if (pivots[k] == a.cols) return std::nullopt;  // inconsistent
    if (pivots.size() != a.cols)
        throw std::invalid_argument("solve_unique: solution not unique");
    QVec x(a.cols);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m(k, a.cols);
    return x;
}

// Inverse of an invertible square integer matrix as a rational matrix.
inline QMat rational_inverse(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("rational_inverse: not square");
    std::size_t n = m.rows;
    QMat w(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = Rat(m(i, j));
        w(i, n + i) = 1;
    }
    auto pivots = rref(w);
    if (pivots.size() != n || pivots.back() >= n)
        throw std::invalid_argument("rational_inverse: singular matrix");
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
    return inv;
}

// Inverse of a unimodular integer matrix, returned over the integers.
inline Mat inverse_unimodular(const Mat& m) {
    QMat qi = rational_inverse(m);
    Mat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Rat& q = qi(i, j);
            if (q.get_den() != 1)
                throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
            r(i, j) = q.get_num();
        }
    return r;
}

inline Int det(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: not square");
    // Fraction-free Gaussian elimination (Bareiss).
    Mat w = m;
    std::size_t n = m.rows;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

// Primitive integer kernel vector of a rank-(cols-1) row system; nullopt if
// the kernel is not one-dimensional.
inline std::optional<Vec> primitive_kernel_vector(const std::vector<Vec>& rows,
                                                  std::size_t ncols) {
    QMat m(std::max<std::size_t>(rows.size(), 1), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m(i, j) = Rat(rows[i][j]);
    auto pivots = rref(m);
    if (pivots.size() != ncols - 1) return std::nullopt;
    // One free column: build the kernel vector and clear denominators.
    std::size_t free_col = 0;
    {
        std::vector<bool> is_pivot(ncols, false);
        for (auto p : pivots) is_pivot[p] = true;
        while (free_col < ncols && is_pivot[free_col]) ++free_col;
    }
    QVec x(ncols);
    x[free_col] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = -m(k, free_col);
    Int lcm_den = 1;
    for (const Rat& q : x) lcm_den = lcm(lcm_den, Int(q.get_den()));
    Vec v(ncols);
    for (std::size_t j = 0; j < ncols; ++j)
        v[j] = Int(x[j].get_num()) * (lcm_den / Int(x[j].get_den()));
    return primitive_part(v);
}

// ---------------------------------------------------------------------------
// Facet normals of a full-dimensional strongly convex cone.
// ---------------------------------------------------------------------------

// Inner facet normals u with sigma = { x : <x,u> >= 0 for all u }, each
// primitive, lex-sorted.  Candidates are kernels of (n-1)-subsets of rays;
// a candidate is kept when all rays lie on one side.
inline std::vector<Vec> facet_normals(const std::vector<Vec>& rays) {
    if (rays.empty()) throw std::invalid_argument("facet_normals: no rays");
    const std::size_t n = rays[0].size();
    for (const Vec& r : rays)
        if (r.size() != n) throw std::invalid_argument("facet_normals: rank mismatch");

    if (rank_of_rows(rays) != n)
        throw std::invalid_argument("not full-dimensional (unsupported)");

    std::vector<Vec> normals;
    if (n == 1) {
        normals.push_back({rays[0][0] > 0 ? Int(1) : Int(-1)});
    } else {
        // Enumerate (n-1)-subsets of rays.
        const std::size_t k = rays.size();
        std::vector<std::size_t> comb(n - 1);
        for (std::size_t i = 0; i < n - 1; ++i) comb[i] = i;
        auto advance = [&]() -> bool {
            std::size_t i = n - 1;
            while (i > 0) {
                --i;
                if (comb[i] + (n - 1 - i) < k) {
                    ++comb[i];
                    for (std::size_t j = i + 1; j < n - 1; ++j)
                        comb[j] = comb[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        if (k >= n - 1) {
            do {
                std::vector<Vec> sub;
                sub.reserve(n - 1);
                for (auto i : comb) sub.push_back(rays[i]);
                auto ker = primitive_kernel_vector(sub, n);
                if (!ker) continue;
                int pos = 0, neg = 0;
                for (const Vec& r : rays) {
                    int s = sgn(dot(r, *ker));
                    if (s > 0) ++pos;
                    else if (s < 0) ++neg;
                }
                if (pos && neg) continue;
                Vec u = neg ? vec_neg(*ker) : *ker;
                if (std::find(normals.begin(), normals.end(), u) == normals.end())
                    normals.push_back(u);
            } while (advance());
        }
    }
    if (rank_of_rows(normals) != n)
        throw std::invalid_argument("not strongly convex");
    std::sort(normals.begin(), normals.end(), lex_less);
    return normals;
}

}  // namespace nashtoric
