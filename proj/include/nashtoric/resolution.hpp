// Constructive subdivision pipelines: Hirzebruch-Jung minimal resolution in
// rank two, simplicialization, regularization, full resolution, and the
// ray-avoidance construction certifying non-essential divisors.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nashtoric/arc_order.hpp"
#include "nashtoric/cone.hpp"
#include "nashtoric/errors.hpp"
#include "nashtoric/fan.hpp"
#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

namespace detail {

// Hirzebruch-Jung chain between two independent primitive vectors in Z^2:
// the rays of the minimal regular subdivision of <g1,g2>, endpoints
// included, ordered from g1 to g2.
inline std::vector<Vec> hj_chain_2d(const Vec& g1, const Vec& g2) {
    // Unimodular U with U*g1 = (0,1).
    Int a = g1[0], b = g1[1];
    Int x, y, g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    if (g != 1) throw std::invalid_argument("hj_chain_2d: generator not primitive");
    Mat t(2, 2);
    t(0, 0) = b;  t(0, 1) = -a;
    t(1, 0) = x;  t(1, 1) = y;
    Vec h2 = mat_vec(t, g2);
    if (h2[0] == 0) throw std::invalid_argument("hj_chain_2d: generators are parallel");
    if (h2[0] < 0) {
        t(0, 0) = -t(0, 0);
        t(0, 1) = -t(0, 1);
        h2 = mat_vec(t, g2);
    }
    Int d = h2[0], m = h2[1];
    // Shear fixing (0,1) so that U*g2 = (d,-k) with 0 <= k < d.
    Int r0;
    mpz_fdiv_r(r0.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
    Int r = (r0 == 0) ? Int(0) : r0 - d;  // r in (-d, 0]
    Int shear = (r - m) / d;
    t(1, 0) += shear * t(0, 0);
    t(1, 1) += shear * t(0, 1);
    Int k = -r;

    std::vector<Vec> chain;
    chain.push_back(Vec{Int(0), Int(1)});
    if (k == 0) {
        if (d != 1)
            throw std::logic_error("hj_chain_2d: imprimitive normalized generator");
        // Regular cone: no inserted rays.
    } else {
        // d/k = a1 - 1/(a2 - 1/(...)) with all a_i >= 2.
        std::vector<Int> cf;
        Int dd = d, kk = k;
        while (kk > 0) {
            Int q;  // ceil(dd/kk)
            mpz_cdiv_q(q.get_mpz_t(), dd.get_mpz_t(), kk.get_mpz_t());
            cf.push_back(q);
            Int nk = q * kk - dd;
            dd = kk;
            kk = nk;
        }
        Vec prev{Int(0), Int(1)}, cur{Int(1), Int(0)};
        for (const Int& ai : cf) {
            if (ai < 2) throw std::logic_error("hj_chain_2d: continued fraction entry < 2");
            chain.push_back(cur);
            Vec next = vec_sub(vec_scale(ai, cur), prev);
            prev = cur;
            cur = next;
        }
        if (cur != Vec{d, -k})
            throw std::logic_error("hj_chain_2d: recursion did not reach the far generator");
    }
    chain.push_back(Vec{d, -k});

    // Back to the original coordinates.
    Mat tinv = inverse_unimodular(t);
    std::vector<Vec> out;
    out.reserve(chain.size());
    for (const Vec& w : chain) out.push_back(mat_vec(tinv, w));
    if (out.front() != g1 || out.back() != primitive_part(g2))
        throw std::logic_error("hj_chain_2d: endpoint mismatch");
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        Int dij = out[i][0] * out[i + 1][1] - out[i][1] * out[i + 1][0];
        if (abs(dij) != 1)
            throw std::logic_error("hj_chain_2d: adjacent pair is not unimodular");
    }
    return out;
}

// Basis of the saturation of the rank-2 sublattice spanned by n1, n2, and
// the coordinates of both in that basis.
struct SaturatedPlane {
    Vec b1, b2;                      // basis rows of the saturated sublattice
    Vec embed(const Vec& c2) const {  // plane coords -> ambient
        return vec_add(vec_scale(c2[0], b1), vec_scale(c2[1], b2));
    }
    std::optional<Vec> coords(const Vec& v) const {
        // Solve v = alpha*b1 + beta*b2 exactly.
        Mat m(b1.size(), 2);
        for (std::size_t i = 0; i < b1.size(); ++i) {
            m(i, 0) = b1[i];
            m(i, 1) = b2[i];
        }
        QVec rhs(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) rhs[i] = Rat(v[i]);
        auto x = solve_unique(m, rhs);
        if (!x) return std::nullopt;
        if ((*x)[0].get_den() != 1 || (*x)[1].get_den() != 1) return std::nullopt;
        return Vec{Int((*x)[0].get_num()), Int((*x)[1].get_num())};
    }
};

inline SaturatedPlane saturated_plane(const Vec& n1, const Vec& n2) {
    Mat m = Mat::from_rows({n1, n2});
    if (rank_of(m) != 2)
        throw std::invalid_argument("saturated_plane: vectors do not span a plane");
    auto [d, u, v] = smith_normal_form(m);
    (void)d;
    (void)u;
    Mat vinv = inverse_unimodular(v);
    return SaturatedPlane{vinv.row(0), vinv.row(1)};
}

// Rays of the minimal regular subdivision of the two-dimensional cone
// <n1,n2> inside the saturation of its span, endpoints included.
inline std::vector<Vec> hj_chain_in_sublattice(const Vec& n1, const Vec& n2) {
    SaturatedPlane pl = saturated_plane(n1, n2);
    auto c1 = pl.coords(primitive_part(n1));
    auto c2 = pl.coords(primitive_part(n2));
    if (!c1 || !c2)
        throw std::logic_error("hj_chain_in_sublattice: saturation basis failure");
    std::vector<Vec> chain2 = hj_chain_2d(*c1, *c2);
    std::vector<Vec> out;
    out.reserve(chain2.size());
    for (const Vec& w : chain2) out.push_back(pl.embed(w));
    return out;
}

}  // namespace detail

// Minimal regular subdivision of a rank-2 cone via Hirzebruch-Jung continued
// fractions.  New rays are the lattice points on the bounded part of the
// boundary of conv((N cap c) \ 0).
inline std::pair<Fan, std::vector<Vec>> hj_minimal_resolution_2d(const Cone& c) {
    if (c.rank != 2)
        throw std::invalid_argument("hj_minimal_resolution_2d: ambient rank must be 2");
    if (is_regular_cone(c)) return {trivial_fan(c), {}};
    std::vector<Vec> chain = detail::hj_chain_2d(c.rays[0], c.rays[1]);
    std::vector<Cone> pieces;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Cone piece = make_cone({chain[i], chain[i + 1]}, 2);
        if (!is_regular_cone(piece))
            throw std::logic_error("hj_minimal_resolution_2d: non-regular piece");
        pieces.push_back(std::move(piece));
    }
    std::sort(pieces.begin(), pieces.end(), cone_list_less);
    std::vector<Vec> new_rays(chain.begin() + 1, chain.end() - 1);
    std::sort(new_rays.begin(), new_rays.end(), lex_less);
    return {Fan{c, std::move(pieces)}, std::move(new_rays)};
}

// Repeated star subdivision at interior points of minimal-dimension
// non-simplicial cones until the fan is simplicial.
inline std::pair<Fan, SubdivisionLog> simplicialize(const Fan& fan) {
    Fan f = fan;
    SubdivisionLog log;
    for (;;) {
        std::optional<std::pair<int, std::vector<Vec>>> pick;
        for (const std::vector<Vec>& rays : fan_all_cones(f)) {
            if (rays.empty()) continue;
            int dim = (int)rank_of_rows(rays);
            if ((int)rays.size() == dim) continue;
            if (!pick || dim < pick->first ||
                (dim == pick->first &&
                 std::lexicographical_compare(rays.begin(), rays.end(),
                                              pick->second.begin(),
                                              pick->second.end(), lex_less)))
                pick = {dim, rays};
        }
        if (!pick) break;
        Vec center(pick->second.front().size(), Int(0));
        for (const Vec& r : pick->second) center = vec_add(center, r);
        center = primitive_part(center);
        f = star_subdivide(f, center);
        log.steps.push_back({center, SubdivisionPhase::Simplicialize});
    }
    return {f, log};
}

// Star subdivision at parallelepiped points of maximal-multiplicity cones
// until every cone is regular.
inline std::pair<Fan, SubdivisionLog> regularize(const Fan& fan) {
    if (!is_simplicial_fan(fan))
        throw std::invalid_argument("regularize: fan must be simplicial");
    Fan f = fan;
    SubdivisionLog log;
    auto mult_profile = [](const Fan& g) {
        std::vector<Int> ms;
        for (const Cone& c : g.max_cones) ms.push_back(multiplicity(cone_as_face(c)));
        std::sort(ms.rbegin(), ms.rend());
        return ms;
    };
    std::vector<Int> profile = mult_profile(f);
    for (;;) {
        std::optional<std::size_t> pick;
        Int best_mult = 1;
        for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
            Int m = multiplicity(cone_as_face(f.max_cones[i]));
            if (m > best_mult) {
                best_mult = m;
                pick = i;
            }
        }
        if (!pick) break;
        const Cone& lambda = f.max_cones[*pick];
        std::optional<Vec> center;
        Rat best_sum;
        for (const Vec& p : detail::half_open_parallelepiped_points(lambda)) {
            if (is_zero(p)) continue;
            QVec coeff = detail::simplex_coefficients(lambda, p);
            Rat s = 0;
            for (const Rat& q : coeff) s += q;
            if (!center || s < best_sum ||
                (s == best_sum && lex_less(p, *center))) {
                center = p;
                best_sum = s;
            }
        }
        if (!center)
            throw std::logic_error("regularize: singular cone with empty parallelepiped");
        if (primitive_part(*center) != *center)
            throw std::logic_error("regularize: selected center is not primitive");
        f = star_subdivide(f, *center);
        log.steps.push_back({*center, SubdivisionPhase::Regularize});
        std::vector<Int> next = mult_profile(f);
        if (!std::lexicographical_compare(next.begin(), next.end(),
                                          profile.begin(), profile.end()))
            throw std::logic_error("regularize: multiplicity profile did not decrease");
        profile = std::move(next);
    }
    return {f, log};
}

// Full equivariant resolution: simplicialize, then regularize.  Touches only
// singular cones, so the morphism is an isomorphism over the smooth locus.
inline std::pair<Fan, SubdivisionLog> resolve(const Cone& c) {
    auto [f1, log1] = simplicialize(trivial_fan(c));
    auto [f2, log2] = regularize(f1);
    log1.steps.insert(log1.steps.end(), log2.steps.begin(), log2.steps.end());
    return {f2, log1};
}

namespace detail {

inline bool all_certificates(const Fan& f, const Cone& c) {
    return is_subdivision(f, c) && is_regular_fan(f) &&
           preserves_regular_faces(f, c) && is_divisorial(f, c);
}

// One attempt of the ray-avoidance pipeline for the decomposition
// v = n1 + n2; nullopt if this decomposition does not lead to a valid
// divisorial resolution omitting v.
inline std::optional<std::pair<Fan, SubdivisionLog>> try_avoid(const Cone& c,
                                                               const Vec& v,
                                                               Vec n1, Vec n2) {
    // Reduction: if n2 is not in S it lies in a regular face; fold all of
    // that face's contribution except one ray into n1.
    if (!in_S(c, n2)) {
        Face tau = smallest_face_containing(c, n2);
        if (tau.dim > 1) {
            Mat m((std::size_t)c.rank, tau.rays.size());
            for (std::size_t j = 0; j < tau.rays.size(); ++j)
                for (std::size_t i = 0; i < (std::size_t)c.rank; ++i)
                    m(i, j) = tau.rays[j][i];
            QVec rhs(n2.size());
            for (std::size_t i = 0; i < n2.size(); ++i) rhs[i] = Rat(n2[i]);
            auto x = solve_unique(m, rhs);
            if (!x) return std::nullopt;
            std::vector<Int> b(tau.rays.size());
            for (std::size_t j = 0; j < b.size(); ++j) {
                if ((*x)[j].get_den() != 1 || (*x)[j] <= 0) return std::nullopt;
                b[j] = (*x)[j].get_num();
            }
            Vec folded = n1;
            for (std::size_t j = 1; j < tau.rays.size(); ++j)
                folded = vec_add(folded, vec_scale(b[j], tau.rays[j]));
            n1 = folded;
            n2 = vec_scale(b[0], tau.rays[0]);
            if (!in_S(c, n1)) return std::nullopt;
        }
    }

    std::vector<Vec> chain;
    try {
        chain = hj_chain_in_sublattice(n1, n2);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }

    // Locate the chain cone whose relative interior holds v.
    SaturatedPlane pl = saturated_plane(n1, n2);
    auto vc = pl.coords(v);
    if (!vc) return std::nullopt;
    std::optional<std::pair<Vec, Vec>> pair;
    for (std::size_t i = 0; i + 1 < chain.size() && !pair; ++i) {
        auto a = pl.coords(chain[i]);
        auto b = pl.coords(chain[i + 1]);
        if (!a || !b) return std::nullopt;
        // v = x*a + y*b with x,y > 0 (2x2 exact solve).
        Int det2 = (*a)[0] * (*b)[1] - (*a)[1] * (*b)[0];
        if (det2 == 0) continue;
        Rat x(((*vc)[0] * (*b)[1] - (*vc)[1] * (*b)[0]), det2);
        Rat y(((*a)[0] * (*vc)[1] - (*a)[1] * (*vc)[0]), det2);
        x.canonicalize();
        y.canonicalize();
        if (x > 0 && y > 0) pair = {chain[i], chain[i + 1]};
    }
    if (!pair) return std::nullopt;  // v sits on a chain ray

    Fan f = trivial_fan(c);
    SubdivisionLog log;
    SubdivisionPhase phases[2] = {SubdivisionPhase::StarN1, SubdivisionPhase::StarN2};
    Vec centers[2] = {pair->first, pair->second};
    for (int i = 0; i < 2; ++i) {
        std::vector<Vec> rays = fan_rays(f);
        if (std::find(rays.begin(), rays.end(), centers[i]) != rays.end())
            continue;  // already a ray (e.g. on a one-dimensional face)
        if (!in_S(c, centers[i])) return std::nullopt;
        f = star_subdivide(f, centers[i]);
        log.steps.push_back({centers[i], phases[i]});
    }

    auto [f1, log1] = simplicialize(f);
    auto [f2, log2] = regularize(f1);
    log.steps.insert(log.steps.end(), log1.steps.begin(), log1.steps.end());
    log.steps.insert(log.steps.end(), log2.steps.begin(), log2.steps.end());

    std::vector<Vec> final_rays = fan_rays(f2);
    if (std::find(final_rays.begin(), final_rays.end(), v) != final_rays.end())
        return std::nullopt;
    std::vector<Vec> pair_cone{pair->first, pair->second};
    std::sort(pair_cone.begin(), pair_cone.end(), lex_less);
    std::vector<std::vector<Vec>> all = fan_all_cones(f2);
    if (!std::binary_search(all.begin(), all.end(), pair_cone))
        return std::nullopt;
    if (!all_certificates(f2, c)) return std::nullopt;
    return {{f2, log}};
}

}  // namespace detail

// Regular divisorial subdivision of c that omits the ray through v,
// witnessing that D_v is not an essential divisor.  Refuses when v is a
// minimal element of S.
inline std::pair<Fan, SubdivisionLog> avoid_ray(const Cone& c, const Vec& v) {
    if (is_zero(v) || primitive_part(v) != v)
        throw std::invalid_argument("avoid_ray: v must be a primitive lattice point");
    if (!in_S(c, v))
        throw std::invalid_argument("avoid_ray: v is not in S");
    MinimalElementReport rep = minimal_elements(c);
    if (std::binary_search(rep.minimal_elements.begin(),
                           rep.minimal_elements.end(), v, lex_less))
        throw RefusalError("cannot avoid an essential divisor");

    for (const Vec& n1 : minimal_element_candidates(c)) {
        if (n1 == v || !in_S(c, n1)) continue;
        Vec n2 = vec_sub(v, n1);
        if (is_zero(n2) || !contains(c, n2)) continue;
        auto attempt = detail::try_avoid(c, v, n1, n2);
        if (attempt) return *attempt;
    }
    throw std::logic_error(
        "avoid_ray: no decomposition produced a valid resolution; "
        "this contradicts non-minimality of v");
}

}  // namespace nashtoric
