// The set S of lattice points in relative interiors of singular faces,
// the cone-induced partial order, and enumeration of its minimal elements.

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "nashtoric/cone.hpp"
#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

struct MinimalElementReport {
    Cone cone;
    std::vector<Vec> minimal_elements;  // lex-sorted, primitive
    std::size_t candidate_count = 0;    // parallelepiped candidates
    std::size_t s_candidate_count = 0;  // candidates that lie in S
};

inline bool in_S(const Cone& c, const Vec& v) {
    if (!contains(c, v)) return false;
    return !is_regular(smallest_face_containing(c, v));
}

// v <= w in the cone order iff w - v stays in the cone.
inline bool leq(const Cone& c, const Vec& v, const Vec& w) {
    if (!contains(c, v) || !contains(c, w))
        throw std::invalid_argument("leq: arguments must lie in the cone");
    return contains(c, vec_sub(w, v));
}

namespace detail {

// Pulling triangulation of the face lattice: recursively cone the
// lex-smallest ray of a face over the facets avoiding it.
inline void pull_triangulate(const std::vector<Face>& all, const Face& f,
                             std::vector<std::vector<Vec>>& out) {
    if (is_simplicial(f)) {
        out.push_back(f.rays);
        return;
    }
    const Vec& r0 = f.rays.front();  // lex-min (rays are sorted)
    std::vector<std::vector<Vec>> sub;
    for (const Face& g : all) {
        if (g.dim != f.dim - 1) continue;
        if (!std::includes(f.rays.begin(), f.rays.end(), g.rays.begin(),
                           g.rays.end(), lex_less))
            continue;
        if (std::binary_search(g.rays.begin(), g.rays.end(), r0, lex_less))
            continue;
        sub.clear();
        pull_triangulate(all, g, sub);
        for (auto& piece : sub) {
            piece.push_back(r0);
            std::sort(piece.begin(), piece.end(), lex_less);
            out.push_back(std::move(piece));
        }
    }
}

}  // namespace detail

// Simplicial cones with rays among the rays of c, pairwise meeting in common
// faces, whose union is c.  Deterministic.
inline std::vector<Cone> triangulate(const Cone& c) {
    if ((int)c.rays.size() == c.rank) return {c};
    std::vector<Face> all = faces(c);
    std::vector<std::vector<Vec>> pieces;
    detail::pull_triangulate(all, cone_as_face(c), pieces);
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    std::vector<Cone> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces) out.push_back(make_cone(p, c.rank));
    return out;
}

namespace detail {

// Lattice points of { sum c_i r_i : 0 <= c_i < 1 } for a full-dimensional
// simplicial cone, enumerated through the quotient Z^n / R Z^n.
inline std::vector<Vec> half_open_parallelepiped_points(const Cone& simplex) {
    const std::size_t n = simplex.rank;
    if (simplex.rays.size() != n)
        throw std::invalid_argument("parallelepiped: cone is not simplicial");
    // Columns of R are the rays.
    Mat r(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r(i, j) = simplex.rays[j][i];
    auto [d, u, v] = smith_normal_form(r);
    (void)v;
    Mat uinv = inverse_unimodular(u);
    QMat rinv = rational_inverse(r);

    std::vector<Int> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = d(i, i);

    std::vector<Vec> pts;
    Vec y(n, Int(0));
    for (;;) {
        // g = uinv * y is a coset representative of Z^n / R Z^n.
        Vec g = mat_vec(uinv, y);
        // Reduce the coefficient vector into [0,1)^n.
        QVec coeff(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < n; ++j) s += rinv(i, j) * Rat(g[j]);
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
            coeff[i] = s - Rat(fl);
        }
        Vec p(n, Int(0));
        for (std::size_t i = 0; i < n; ++i) {
            Rat comp = 0;
            for (std::size_t j = 0; j < n; ++j)
                comp += coeff[j] * Rat(simplex.rays[j][i]);
            if (comp.get_den() != 1)
                throw std::logic_error("parallelepiped: non-integral point");
            p[i] = comp.get_num();
        }
        pts.push_back(std::move(p));
        // Advance the mixed-radix counter over the invariant factors.
        std::size_t k = 0;
        while (k < n) {
            ++y[k];
            if (y[k] < diag[k]) break;
            y[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline QVec simplex_coefficients(const Cone& simplex, const Vec& p) {
    Mat r((std::size_t)simplex.rank, simplex.rays.size());
    for (std::size_t j = 0; j < simplex.rays.size(); ++j)
        for (std::size_t i = 0; i < (std::size_t)simplex.rank; ++i)
            r(i, j) = simplex.rays[j][i];
    QVec b(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) b[i] = Rat(p[i]);
    auto x = solve_unique(r, b);
    if (!x) throw std::invalid_argument("simplex_coefficients: point not in span");
    return *x;
}

}  // namespace detail

// Lattice points of the closed parallelepiped { sum c_i r_i : 0 <= c_i <= 1 },
// lex-sorted.
inline std::vector<Vec> parallelepiped_points(const Cone& simplex) {
    const std::size_t n = simplex.rank;
    if (simplex.rays.size() != n)
        throw std::invalid_argument("parallelepiped_points: cone is not simplicial");
    std::vector<Vec> half = detail::half_open_parallelepiped_points(simplex);
    std::vector<Vec> pts;
    for (const Vec& p : half) {
        QVec c = detail::simplex_coefficients(simplex, p);
        std::vector<std::size_t> zero;
        for (std::size_t i = 0; i < n; ++i)
            if (c[i] == 0) zero.push_back(i);
        // Shift across every subset of the vanishing coefficients.
        for (std::size_t mask = 0; mask < (std::size_t(1) << zero.size()); ++mask) {
            Vec q = p;
            for (std::size_t i = 0; i < zero.size(); ++i)
                if (mask & (std::size_t(1) << i))
                    q = vec_add(q, simplex.rays[zero[i]]);
            pts.push_back(std::move(q));
        }
    }
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Candidate region for minimal elements of S: the closed fundamental
// parallelepipeds of a triangulation of the cone.  Every minimal element of
// S lies there: if v = sum c_i g_i with some c_j > 1 then v - g_j is again
// in the relative interior of the same face, lies in S, and is below v in
// the cone order, contradicting minimality.
inline std::vector<Vec> minimal_element_candidates(const Cone& c) {
    std::vector<Vec> cand;
    for (const Cone& s : triangulate(c))
        for (Vec& p : parallelepiped_points(s))
            cand.push_back(std::move(p));
    std::sort(cand.begin(), cand.end(), lex_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

inline MinimalElementReport minimal_elements(const Cone& c) {
    std::vector<Vec> cand = minimal_element_candidates(c);
    std::vector<Vec> in_s;
    for (const Vec& p : cand)
        if (in_S(c, p)) in_s.push_back(p);

    // A strictly positive functional on the cone: domination can only come
    // from candidates with a strictly smaller value.
    Vec pos(c.rank, Int(0));
    for (const Vec& u : c.normals) pos = vec_add(pos, u);
    std::vector<std::pair<Int, Vec>> keyed;
    keyed.reserve(in_s.size());
    for (const Vec& p : in_s) keyed.emplace_back(dot(p, pos), p);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lex_less(a.second, b.second);
    });

    std::vector<Vec> minimal;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < i && !dominated; ++j) {
            if (keyed[j].first >= keyed[i].first) break;
            if (contains(c, vec_sub(keyed[i].second, keyed[j].second)))
                dominated = true;
        }
        if (!dominated) minimal.push_back(keyed[i].second);
    }
    std::sort(minimal.begin(), minimal.end(), lex_less);
    for (const Vec& v : minimal)
        if (primitive_part(v) != v)
            throw std::logic_error("minimal_elements: non-primitive minimal element");
    return MinimalElementReport{c, std::move(minimal), cand.size(), in_s.size()};
}

inline std::size_t essential_divisor_count(const Cone& c) {
    return minimal_elements(c).minimal_elements.size();
}

}  // namespace nashtoric
