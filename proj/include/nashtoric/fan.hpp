// Fans subdividing a fixed ambient cone: star subdivision and the
// certificate predicates (subdivision, regularity, face preservation,
// divisoriality).

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtoric/cone.hpp"
#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

struct Fan {
    Cone ambient;
    std::vector<Cone> max_cones;  // full-dimensional, sorted by ray lists
};

enum class SubdivisionPhase {
    TwoDimMinimal,
    StarN1,
    StarN2,
    Simplicialize,
    Regularize,
};

inline const char* phase_name(SubdivisionPhase p) {
    switch (p) {
        case SubdivisionPhase::TwoDimMinimal: return "two-dim-minimal";
        case SubdivisionPhase::StarN1: return "star-n1";
        case SubdivisionPhase::StarN2: return "star-n2";
        case SubdivisionPhase::Simplicialize: return "simplicialize";
        case SubdivisionPhase::Regularize: return "regularize";
    }
    return "?";
}

struct SubdivisionStep {
    Vec center;
    SubdivisionPhase phase;
};

struct SubdivisionLog {
    std::vector<SubdivisionStep> steps;
};

inline bool cone_list_less(const Cone& a, const Cone& b) {
    return std::lexicographical_compare(a.rays.begin(), a.rays.end(),
                                        b.rays.begin(), b.rays.end(), lex_less);
}

inline Fan trivial_fan(const Cone& c) { return Fan{c, {c}}; }

inline std::vector<Vec> fan_rays(const Fan& f) {
    std::vector<Vec> rs;
    for (const Cone& c : f.max_cones)
        for (const Vec& r : c.rays)
            if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
    std::sort(rs.begin(), rs.end(), lex_less);
    return rs;
}

// Face closure of the fan as canonical ray lists (including the zero face
// as the empty list), sorted.
inline std::vector<std::vector<Vec>> fan_all_cones(const Fan& f) {
    std::set<std::vector<Vec>> seen;
    for (const Cone& c : f.max_cones)
        for (const Face& face : faces(c)) seen.insert(face.rays);
    return {seen.begin(), seen.end()};
}

// Does the (possibly lower-dimensional) face of c cut out by the normals
// vanishing on its rays contain v?
inline bool face_contains(const Cone& c, const std::vector<Vec>& face_rays,
                          const Vec& v) {
    if (!contains(c, v)) return false;
    for (const Vec& u : c.normals) {
        bool vanishes = true;
        for (const Vec& r : face_rays)
            if (dot(r, u) != 0) { vanishes = false; break; }
        if (vanishes && dot(v, u) != 0) return false;
    }
    return true;
}

// Star subdivision at a primitive lattice point: every maximal cone
// containing v is replaced by the joins of v with its facets avoiding v.
inline Fan star_subdivide(const Fan& f, const Vec& v) {
    if (is_zero(v) || primitive_part(v) != v)
        throw std::invalid_argument("star_subdivide: center must be a primitive lattice point");
    if (!contains(f.ambient, v))
        throw std::invalid_argument("star_subdivide: center not in the ambient cone");
    for (const Vec& r : fan_rays(f))
        if (r == v)
            throw std::invalid_argument("star_subdivide: center is already a ray");

    std::vector<Cone> out;
    for (const Cone& c : f.max_cones) {
        if (!contains(c, v)) {
            out.push_back(c);
            continue;
        }
        for (const Vec& u : c.normals) {
            if (dot(v, u) == 0) continue;  // facet contains v
            std::vector<Vec> piece;
            for (const Vec& r : c.rays)
                if (dot(r, u) == 0) piece.push_back(r);
            piece.push_back(v);
            out.push_back(make_cone(piece, c.rank));
        }
    }
    std::sort(out.begin(), out.end(), cone_list_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Fan{f.ambient, std::move(out)};
}

namespace detail {

struct FacetKey {
    Vec normal;               // canonical sign
    std::vector<Vec> rays;    // sorted
    bool operator<(const FacetKey& o) const {
        if (normal != o.normal) return lex_less(normal, o.normal);
        return std::lexicographical_compare(rays.begin(), rays.end(),
                                            o.rays.begin(), o.rays.end(), lex_less);
    }
};

}  // namespace detail

// Exact coverage certificate: pieces inside the ambient cone, every facet
// of a piece either lies on the boundary of c or is shared by exactly two
// pieces on opposite sides, and a generic interior point is covered once.
inline bool is_subdivision(const Fan& f, const Cone& c) {
    if (f.ambient.rank != c.rank)
        throw std::invalid_argument("is_subdivision: ambient rank mismatch");
    if (f.max_cones.empty()) return false;
    for (const Cone& piece : f.max_cones)
        for (const Vec& r : piece.rays)
            if (!contains(c, r)) return false;

    // Facet pairing.
    std::map<detail::FacetKey, std::vector<int>> occurrences;
    for (const Cone& piece : f.max_cones) {
        for (const Vec& u : piece.normals) {
            std::vector<Vec> frays;
            for (const Vec& r : piece.rays)
                if (dot(r, u) == 0) frays.push_back(r);
            std::sort(frays.begin(), frays.end(), lex_less);
            Vec canon = u;
            int side = 1;
            Vec neg = vec_neg(u);
            if (lex_less(canon, neg)) { canon = neg; side = -1; }
            occurrences[detail::FacetKey{canon, frays}].push_back(side);
        }
    }
    for (const auto& [key, sides] : occurrences) {
        bool on_boundary = false;
        for (const Vec& uc : c.normals) {
            bool all_zero = true;
            for (const Vec& r : key.rays)
                if (dot(r, uc) != 0) { all_zero = false; break; }
            if (all_zero) { on_boundary = true; break; }
        }
        if (on_boundary) {
            if (sides.size() != 1) return false;
        } else {
            if (sides.size() != 2 || sides[0] + sides[1] != 0) return false;
        }
    }

    // Generic point of the first piece must be covered exactly once.  With
    // weights 1, w, w^2, ... the pairing against any facet normal is a nonzero
    // polynomial in w of degree below the ray count, so each hyperplane rules
    // out fewer than that many values of w and the loop bound is sufficient.
    const Cone& p0 = f.max_cones.front();
    std::size_t nhyp = 0;
    for (const Cone& piece : f.max_cones) nhyp += piece.normals.size();
    Int wmax = Int(2 + (unsigned long)(nhyp * p0.rays.size()));
    for (Int w = 1; w <= wmax; ++w) {
        Vec pt(c.rank, Int(0));
        Int wi = 1;
        for (const Vec& r : p0.rays) {
            pt = vec_add(pt, vec_scale(wi, r));
            wi *= w;
        }
        bool generic = true;
        for (const Cone& piece : f.max_cones)
            for (const Vec& u : piece.normals)
                if (dot(pt, u) == 0) generic = false;
        if (!generic) continue;
        int covered = 0;
        for (const Cone& piece : f.max_cones)
            if (contains(piece, pt)) ++covered;
        return covered == 1;
    }
    throw std::logic_error("is_subdivision: could not find a generic sample point");
}

inline bool is_regular_fan(const Fan& f) {
    for (const Cone& c : f.max_cones)
        if (!is_regular_cone(c)) return false;
    return true;
}

inline bool is_simplicial_fan(const Fan& f) {
    for (const Cone& c : f.max_cones)
        if ((int)c.rays.size() != c.rank) return false;
    return true;
}

// Every regular face of c survives untouched: it is a cone of f and no ray
// of f lies inside it other than its own rays.
inline bool preserves_regular_faces(const Fan& f, const Cone& c) {
    if (f.ambient.rank != c.rank)
        throw std::invalid_argument("preserves_regular_faces: ambient rank mismatch");
    std::vector<std::vector<Vec>> cones_of_f = fan_all_cones(f);
    std::vector<Vec> rays_of_f = fan_rays(f);
    for (const Face& tau : faces(c)) {
        if (!is_regular(tau) || tau.rays.empty()) continue;
        if (!std::binary_search(cones_of_f.begin(), cones_of_f.end(), tau.rays))
            return false;
        for (const Vec& r : rays_of_f) {
            if (!face_contains(c, tau.rays, r)) continue;
            if (std::find(tau.rays.begin(), tau.rays.end(), r) == tau.rays.end())
                return false;
        }
    }
    return true;
}

inline std::vector<Vec> exceptional_rays(const Fan& f, const Cone& c) {
    if (f.ambient.rank != c.rank)
        throw std::invalid_argument("exceptional_rays: ambient rank mismatch");
    std::vector<Vec> out;
    for (const Vec& r : fan_rays(f))
        if (std::find(c.rays.begin(), c.rays.end(), r) == c.rays.end())
            out.push_back(r);
    return out;
}

// Pure-codimension-one exceptional set: every cone of f spanned entirely by
// original rays must already be a face of c.
inline bool is_divisorial(const Fan& f, const Cone& c) {
    if (!is_subdivision(f, c))
        throw std::invalid_argument("is_divisorial: fan is not a subdivision of the cone");
    std::set<std::vector<Vec>> faces_of_c;
    for (const Face& face : faces(c)) faces_of_c.insert(face.rays);
    for (const std::vector<Vec>& rays : fan_all_cones(f)) {
        bool all_original = true;
        for (const Vec& r : rays)
            if (std::find(c.rays.begin(), c.rays.end(), r) == c.rays.end()) {
                all_original = false;
                break;
            }
        if (all_original && !faces_of_c.count(rays)) return false;
    }
    return true;
}

}  // namespace nashtoric
