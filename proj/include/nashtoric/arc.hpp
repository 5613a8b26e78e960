// Truncated one-parameter arcs through the torus, their coordinatewise
// valuations, and families of arcs with coefficients polynomial in one
// deformation parameter.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashtoric/cone.hpp"
#include "nashtoric/fan.hpp"
#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

// One Laurent series component known modulo t^{trunc+1}: the coefficient of
// t^{ord+i} is coeffs[i].  A component with no nonzero coefficient up to the
// truncation is stored with empty coeffs; its order is undetermined.
struct LaurentComponent {
    long ord = 0;
    std::vector<Rat> coeffs;  // leading coefficient first, nonzero if present
    long trunc = 0;           // exponents > trunc are unknown

    bool known_nonzero() const { return !coeffs.empty(); }

    Rat coefficient(long exponent) const {
        if (coeffs.empty()) return 0;
        long i = exponent - ord;
        if (i < 0 || i >= (long)coeffs.size()) return 0;
        return coeffs[(std::size_t)i];
    }

    void normalize() {
        while (!coeffs.empty() && coeffs.front() == 0) {
            coeffs.erase(coeffs.begin());
            ++ord;
        }
        if (!coeffs.empty() && ord + (long)coeffs.size() - 1 > trunc)
            coeffs.resize((std::size_t)(trunc - ord + 1));
        while (!coeffs.empty() && coeffs.front() == 0) {
            coeffs.erase(coeffs.begin());
            ++ord;
        }
        if (coeffs.empty()) ord = 0;
    }
};

inline LaurentComponent laurent_monomial(long e, long trunc, const Rat& c = 1) {
    if (c == 0 || e > trunc) return LaurentComponent{0, {}, trunc};
    return LaurentComponent{e, {c}, trunc};
}

inline LaurentComponent laurent_mul(const LaurentComponent& a,
                                    const LaurentComponent& b) {
    // Truncation of a product is sound up to min over-precision.
    if (!a.known_nonzero() || !b.known_nonzero())
        throw std::invalid_argument("laurent_mul: factor of undetermined order");
    LaurentComponent out;
    out.ord = a.ord + b.ord;
    out.trunc = std::min(a.trunc + b.ord, b.trunc + a.ord);
    long len = out.trunc - out.ord + 1;
    if (len <= 0) return LaurentComponent{0, {}, out.trunc};
    out.coeffs.assign((std::size_t)len, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            long k = (long)(i + j);
            if (k < len) out.coeffs[(std::size_t)k] += a.coeffs[i] * b.coeffs[j];
        }
    out.normalize();
    return out;
}

// An arc through the big torus: every component has a determined order.
struct TorusArc {
    std::vector<LaurentComponent> components;

    int rank() const { return (int)components.size(); }
};

inline TorusArc make_torus_arc(std::vector<LaurentComponent> comps) {
    for (LaurentComponent& c : comps) c.normalize();
    return TorusArc{std::move(comps)};
}

// Coordinatewise order vector.  Every component must be visibly nonzero.
inline Vec valuation_of_arc(const TorusArc& a) {
    Vec v(a.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        if (!a.components[i].known_nonzero())
            throw std::invalid_argument(
                "valuation_of_arc: order undetermined at this truncation");
        v[i] = Int((long)a.components[i].ord);
    }
    return v;
}

inline TorusArc monomial_arc(const Vec& v, long trunc) {
    std::vector<LaurentComponent> comps;
    comps.reserve(v.size());
    for (const Int& e : v) {
        if (!e.fits_slong_p())
            throw std::invalid_argument("monomial_arc: exponent out of range");
        long el = e.get_si();
        if (el > trunc)
            throw std::invalid_argument("monomial_arc: truncation below exponent");
        comps.push_back(laurent_monomial(el, trunc));
    }
    return TorusArc{std::move(comps)};
}

inline TorusArc arc_product(const TorusArc& a, const TorusArc& b) {
    if (a.components.size() != b.components.size())
        throw std::invalid_argument("arc_product: rank mismatch");
    std::vector<LaurentComponent> comps;
    comps.reserve(a.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i)
        comps.push_back(laurent_mul(a.components[i], b.components[i]));
    return TorusArc{std::move(comps)};
}

// The orbit an arc's special point lands on in the chart of c: the smallest
// face of c containing the valuation vector.  The arc extends to the chart
// iff the valuation lies in the cone.
inline Face orbit_of_arc(const Cone& c, const TorusArc& a) {
    Vec v = valuation_of_arc(a);
    if ((int)v.size() != c.rank)
        throw std::invalid_argument("orbit_of_arc: rank mismatch");
    if (!contains(c, v))
        throw std::invalid_argument("orbit_of_arc: arc does not extend to this chart");
    return smallest_face_containing(c, v);
}

// Lift through a subdividing fan: the unique maximal cone of f whose
// relative data place v, together with the orbit face there.  The returned
// cone is the lex-first maximal cone whose smallest face containing v is
// minimal, which is the honest carrier of the lifted special point.
inline std::pair<Cone, Face> lift_orbit(const Fan& f, const TorusArc& a) {
    Vec v = valuation_of_arc(a);
    std::optional<std::pair<Cone, Face>> best;
    for (const Cone& c : f.max_cones) {
        if (!contains(c, v)) continue;
        Face tau = smallest_face_containing(c, v);
        if (!best || tau.dim < best->second.dim) best = {c, tau};
    }
    if (!best)
        throw std::invalid_argument("lift_orbit: arc does not extend to this chart");
    // The carrier face is independent of the containing maximal cone.
    for (const Cone& c : f.max_cones) {
        if (!contains(c, v)) continue;
        if (smallest_face_containing(c, v).rays != best->second.rays)
            throw std::logic_error("lift_orbit: inconsistent carrier face");
    }
    return *best;
}

// A family of arcs: component i is sum_k a_{i,k}(c) t^k with polynomial
// coefficients in the deformation parameter c, known through t^trunc.
struct ArcFamilyComponent {
    std::vector<std::vector<Rat>> coeff_polys;  // index = t-exponent, dense in c
};

struct ArcFamily {
    std::vector<ArcFamilyComponent> components;
    long trunc = 0;
};

inline std::vector<Rat> trim_poly(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline Rat eval_poly(const std::vector<Rat>& p, const Rat& c) {
    Rat v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * c + p[i];
    return v;
}

inline TorusArc specialize(const ArcFamily& fam, const Rat& c) {
    std::vector<LaurentComponent> comps;
    comps.reserve(fam.components.size());
    for (const ArcFamilyComponent& comp : fam.components) {
        LaurentComponent lc;
        lc.ord = 0;
        lc.trunc = fam.trunc;
        lc.coeffs.assign((std::size_t)fam.trunc + 1, 0);
        for (std::size_t k = 0; k < comp.coeff_polys.size() && (long)k <= fam.trunc; ++k)
            lc.coeffs[k] = eval_poly(comp.coeff_polys[k], c);
        lc.normalize();
        comps.push_back(std::move(lc));
    }
    return TorusArc{std::move(comps)};
}

// Witness for semicontinuity of the valuation along the family: for the
// target valuation v, component i contributes its coefficient polynomials of
// t^0 .. t^{v_i}.  The member at parameter c has order <= v_i in component i
// iff at least one of the listed polynomials is nonzero at c, so the locus
// { c : valuation <= v componentwise } is read off the witness.
inline std::vector<std::vector<std::vector<Rat>>> semicontinuity_witness(
    const ArcFamily& fam, const Vec& v) {
    if (v.size() != fam.components.size())
        throw std::invalid_argument("semicontinuity_witness: rank mismatch");
    std::vector<std::vector<std::vector<Rat>>> out(fam.components.size());
    for (std::size_t i = 0; i < fam.components.size(); ++i) {
        if (v[i] < 0)
            throw std::invalid_argument("semicontinuity_witness: negative target order");
        if (Int(v[i]) > Int((long)fam.trunc))
            throw std::invalid_argument(
                "semicontinuity_witness: target order beyond truncation");
        long vi = v[i].get_si();
        for (long k = 0; k <= vi; ++k) {
            std::vector<Rat> p;
            if ((std::size_t)k < fam.components[i].coeff_polys.size())
                p = trim_poly(fam.components[i].coeff_polys[(std::size_t)k]);
            out[i].push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace nashtoric
