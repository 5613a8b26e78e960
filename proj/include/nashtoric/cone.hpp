// Strongly convex full-dimensional rational polyhedral cones, their face
// lattices, regularity and multiplicity.

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

struct Cone {
    int rank = 0;                // ambient lattice rank
    std::vector<Vec> rays;       // primitive, extremal, deduplicated, lex-sorted
    std::vector<Vec> normals;    // primitive inner facet normals, lex-sorted

    bool operator==(const Cone& o) const {
        return rank == o.rank && rays == o.rays;
    }
};

// A face of a parent cone, identified by its ray set.
struct Face {
    std::vector<Vec> rays;       // lex-sorted subset of parent rays
    int dim = 0;
    int ambient_rank = 0;
    std::vector<Vec> parent_rays;
    std::vector<Vec> parent_normals;

    bool same_rays(const Face& o) const { return rays == o.rays; }
};

inline Cone make_cone(const std::vector<Vec>& raw_rays,
                      int max_rank = kDefaultMaxRank) {
    if (raw_rays.empty()) throw std::invalid_argument("make_cone: empty ray list");
    const std::size_t n = raw_rays[0].size();
    if (n == 0) throw std::invalid_argument("make_cone: rank must be positive");
    if ((int)n > max_rank)
        throw std::invalid_argument("make_cone: ambient rank exceeds the configured cap");
    std::vector<Vec> rays;
    for (const Vec& r : raw_rays) {
        if (r.size() != n) throw std::invalid_argument("make_cone: rank mismatch among rays");
        if (is_zero(r)) throw std::invalid_argument("make_cone: zero vector is not a ray");
        Vec p = primitive_part(r);
        if (std::find(rays.begin(), rays.end(), p) == rays.end()) rays.push_back(p);
    }
    std::vector<Vec> normals = facet_normals(rays);  // validates convexity/dimension
    // Keep only extremal rays: a generator is a ray of the cone iff the
    // normals vanishing on it cut out a one-dimensional face.
    std::vector<Vec> extremal;
    for (const Vec& r : rays) {
        std::vector<Vec> vanish;
        for (const Vec& u : normals)
            if (dot(r, u) == 0) vanish.push_back(u);
        if (rank_of_rows(vanish) == n - 1) extremal.push_back(r);
    }
    std::sort(extremal.begin(), extremal.end(), lex_less);
    return Cone{(int)n, std::move(extremal), std::move(normals)};
}

inline bool contains(const Cone& c, const Vec& v) {
    if ((int)v.size() != c.rank)
        throw std::invalid_argument("contains: rank mismatch");
    for (const Vec& u : c.normals)
        if (dot(v, u) < 0) return false;
    return true;
}

namespace detail {

// Rays of c lying on every hyperplane in `vanishing`.
inline std::vector<Vec> rays_on(const Cone& c, const std::vector<Vec>& vanishing) {
    std::vector<Vec> out;
    for (const Vec& r : c.rays) {
        bool on = true;
        for (const Vec& u : vanishing)
            if (dot(r, u) != 0) { on = false; break; }
        if (on) out.push_back(r);
    }
    return out;
}

inline Face make_face(const Cone& c, std::vector<Vec> rays) {
    std::sort(rays.begin(), rays.end(), lex_less);
    int d = rays.empty() ? 0 : (int)rank_of_rows(rays);
    return Face{std::move(rays), d, c.rank, c.rays, c.normals};
}

}  // namespace detail

inline Face smallest_face_containing(const Cone& c, const Vec& v) {
    if (!contains(c, v))
        throw std::invalid_argument("smallest_face_containing: vector not in cone");
    std::vector<Vec> vanishing;
    for (const Vec& u : c.normals)
        if (dot(v, u) == 0) vanishing.push_back(u);
    return detail::make_face(c, detail::rays_on(c, vanishing));
}

inline bool in_relative_interior(const Face& f, const Vec& v) {
    if ((int)v.size() != f.ambient_rank)
        throw std::invalid_argument("in_relative_interior: rank mismatch");
    Cone parent{f.ambient_rank, f.parent_rays, f.parent_normals};
    if (!contains(parent, v)) return false;
    return smallest_face_containing(parent, v).rays == f.rays;
}

// Complete face lattice including the zero face and the cone itself,
// sorted by (dim, rays).
inline std::vector<Face> faces(const Cone& c) {
    const std::size_t m = c.normals.size();
    if (m > 20) throw std::invalid_argument("faces: too many facets");
    std::vector<std::vector<Vec>> seen;
    std::vector<Face> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<Vec> vanishing;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t(1) << i)) vanishing.push_back(c.normals[i]);
        std::vector<Vec> rs = detail::rays_on(c, vanishing);
        std::sort(rs.begin(), rs.end(), lex_less);
        if (std::find(seen.begin(), seen.end(), rs) != seen.end()) continue;
        seen.push_back(rs);
        out.push_back(detail::make_face(c, rs));
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return std::lexicographical_compare(a.rays.begin(), a.rays.end(),
                                            b.rays.begin(), b.rays.end(), lex_less);
    });
    return out;
}

inline bool is_simplicial(const Face& f) { return (int)f.rays.size() == f.dim; }

inline bool is_regular(const Face& f) {
    if (f.rays.empty()) return true;  // zero face: the torus chart is smooth
    if (!is_simplicial(f)) return false;
    for (const Int& d : invariant_factors(Mat::from_rows(f.rays)))
        if (d != 1) return false;
    return true;
}

// Index of the subgroup generated by the rays inside the saturated
// sublattice they span; 1 iff regular.
inline Int multiplicity(const Face& f) {
    if (f.rays.empty()) return 1;
    if (!is_simplicial(f))
        throw std::invalid_argument("multiplicity: face is not simplicial");
    Int m = 1;
    for (const Int& d : invariant_factors(Mat::from_rows(f.rays))) m *= d;
    return m;
}

inline std::vector<Face> singular_faces(const Cone& c) {
    std::vector<Face> out;
    for (Face& f : faces(c))
        if (!is_regular(f)) out.push_back(std::move(f));
    return out;
}

inline Face cone_as_face(const Cone& c) { return detail::make_face(c, c.rays); }

inline bool is_regular_cone(const Cone& c) { return is_regular(cone_as_face(c)); }

}  // namespace nashtoric
