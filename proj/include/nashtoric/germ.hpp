// Hypersurface germs: lines on the tangent cone, curves through the origin
// obtained by Hensel lifting, extension of a curve to a two-parameter
// surface with controlled residual order, jet equations, and strict
// transforms under a chart of the origin blowup.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashtoric/field.hpp"
#include "nashtoric/series.hpp"

namespace nashtoric {

// Dense matrices over the coefficient field, just enough for rank and
// row-reduced solving.
template <typename K>
using KMat = std::vector<std::vector<K>>;

namespace detail {

// In-place reduced row echelon form; returns the pivot columns.
template <typename K>
inline std::vector<std::size_t> krref(KMat<K>& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && field_is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        K inv = K(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || field_is_zero(a[i][c])) continue;
            K f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename K>
inline std::size_t krank(KMat<K> a) {
    return krref(a).size();
}

// Solve a x = b with free variables set to zero; empty if inconsistent.
template <typename K>
inline std::optional<std::vector<K>> ksolve(const KMat<K>& a,
                                            const std::vector<K>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("ksolve: dimension mismatch");
    if (a.empty()) return std::vector<K>{};
    std::size_t cols = a[0].size();
    KMat<K> aug = a;
    for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    std::vector<std::size_t> pivots = krref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    std::vector<K> x(cols, K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

template <typename K>
inline std::optional<KMat<K>> kinverse(const KMat<K>& a) {
    std::size_t n = a.size();
    KMat<K> aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n)
            throw std::invalid_argument("kinverse: matrix not square");
        for (std::size_t j = 0; j < n; ++j)
            aug[i].push_back(i == j ? K(1) : K(0));
    }
    std::vector<std::size_t> pivots = krref(aug);
    if (pivots.size() != n) return std::nullopt;
    KMat<K> inv(n, std::vector<K>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

}  // namespace detail

// A plane through the origin spanned by two independent direction vectors;
// parametrized as s z + t w.
template <typename K = Rat>
struct LineSpec {
    std::vector<K> z, w;
};

template <typename K>
inline LineSpec<K> make_line(std::vector<K> z, std::vector<K> w) {
    if (z.size() != w.size() || z.empty())
        throw std::invalid_argument("make_line: direction arity mismatch");
    KMat<K> m(z.size(), std::vector<K>(2));
    for (std::size_t i = 0; i < z.size(); ++i) {
        m[i][0] = z[i];
        m[i][1] = w[i];
    }
    if (detail::krank(m) != 2)
        throw std::invalid_argument("make_line: directions are dependent");
    return LineSpec<K>{std::move(z), std::move(w)};
}

// Restrict a form to the plane: x_i -> z_i s + w_i t, landing in k[s,t].
template <typename K>
inline Series<K> restrict_to_plane(const Series<K>& f, const LineSpec<K>& l,
                                   int cap) {
    if ((int)l.z.size() != f.nvars)
        throw std::invalid_argument("restrict_to_plane: arity mismatch");
    std::vector<Series<K>> images;
    images.reserve(f.nvars);
    for (int i = 0; i < f.nvars; ++i) {
        Series<K> im(2, cap);
        im.add_term({1, 0}, l.z[i]);
        im.add_term({0, 1}, l.w[i]);
        images.push_back(std::move(im));
    }
    return f.substitute(images);
}

// Is the whole plane contained in the zero set of the homogeneous form fm?
template <typename K>
inline bool line_on_cone(const Series<K>& fm, const LineSpec<K>& l) {
    auto parts = homogeneous_decomposition(fm);
    if (parts.size() != 1)
        throw std::invalid_argument("line_on_cone: form is not homogeneous");
    return restrict_to_plane(fm, l, parts.begin()->first).is_zero();
}

// Invertible matrix whose first two columns are the plane directions,
// completed greedily by coordinate vectors.  Row-major.
template <typename K>
inline KMat<K> complete_line_basis(const LineSpec<K>& l) {
    std::size_t n = l.z.size();
    std::vector<std::vector<K>> cols = {l.z, l.w};
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        std::vector<K> e(n, K(0));
        e[i] = K(1);
        std::vector<std::vector<K>> trial = cols;
        trial.push_back(e);
        KMat<K> m(n, std::vector<K>(trial.size()));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < trial.size(); ++c) m[r][c] = trial[c][r];
        if (detail::krank(m) == trial.size()) cols.push_back(std::move(e));
    }
    if (cols.size() != n)
        throw std::logic_error("complete_line_basis: completion failed");
    KMat<K> out(n, std::vector<K>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out[r][c] = cols[c][r];
    return out;
}

namespace detail {

// Partial derivatives of fm in the adapted basis, restricted to the plane:
// p_i(s,t) = d(fm o M)/dy_i (s, t, 0, ..., 0) for i = 2..n-1 (0-based),
// binary forms of degree m-1.
template <typename K>
inline std::vector<Series<K>> plane_partials(const Series<K>& fm,
                                             const KMat<K>& basis, int m,
                                             int cap) {
    int n = fm.nvars;
    std::vector<Series<K>> yimages;
    yimages.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> im(n, m);
        for (int j = 0; j < n; ++j) {
            std::vector<int> e(n, 0);
            e[j] = 1;
            im.add_term(e, basis[i][j]);
        }
        yimages.push_back(std::move(im));
    }
    Series<K> fmy = fm.truncated(m).substitute(yimages);
    std::vector<Series<K>> st;
    st.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> im(2, cap);
        if (i == 0) im.add_term({1, 0}, K(1));
        if (i == 1) im.add_term({0, 1}, K(1));
        st.push_back(std::move(im));
    }
    std::vector<Series<K>> out;
    for (int i = 2; i < n; ++i)
        out.push_back(fmy.derivative(i).substitute(st));
    return out;
}

}  // namespace detail

// Surjectivity of the normal derivative of fm along the plane: the forms
// s p_i, t p_i (i over the completed directions) must span all binary forms
// of degree m.  Precondition: the plane lies on the cone fm = 0.
template <typename K>
inline bool dfm_surjective(const Series<K>& fm, const LineSpec<K>& l) {
    if (!line_on_cone(fm, l))
        throw std::invalid_argument("dfm_surjective: plane is not on the cone");
    auto parts = homogeneous_decomposition(fm);
    int m = parts.begin()->first;
    int n = fm.nvars;
    if (n < 3) return false;
    KMat<K> basis = complete_line_basis(l);
    std::vector<Series<K>> p = detail::plane_partials(fm, basis, m, m);
    KMat<K> rows;
    for (const Series<K>& pi : p) {
        for (int mul = 0; mul < 2; ++mul) {  // multiply by s, then by t
            std::vector<K> row(m + 1, K(0));
            for (const auto& [e, c] : pi.terms) {
                int a = e[0] + (mul == 0 ? 1 : 0);
                int b = e[1] + (mul == 1 ? 1 : 0);
                if (a + b == m) row[(std::size_t)b] += c;
            }
            rows.push_back(std::move(row));
        }
    }
    return detail::krank(rows) == (std::size_t)m + 1;
}

// Residual order of f along a parametrized family (curve or surface):
// the order of f(images), empty when it vanishes up to the images' cap.
template <typename K>
inline std::optional<int> residual_order(const Series<K>& f,
                                         const std::vector<Series<K>>& images) {
    return f.substitute(images).order();
}

// A curve phi(s) = z s + higher on f = 0, with f(phi) = 0 mod s^{m+n_ord},
// computed by Hensel lifting along one coordinate whose lowest-form
// derivative does not vanish at z.  Coordinates listed in forced_tails keep
// the prescribed tail (terms of degree >= 2) and are never corrected.
template <typename K>
inline std::vector<Series<K>> curve_on_hypersurface(
    const Series<K>& f, const std::vector<K>& z, int n_ord,
    const std::map<int, Series<K>>& forced_tails = {}) {
    int n = f.nvars;
    if ((int)z.size() != n)
        throw std::invalid_argument("curve_on_hypersurface: arity mismatch");
    if (n_ord < 1)
        throw std::invalid_argument("curve_on_hypersurface: order must be positive");
    auto parts = homogeneous_decomposition(f);
    int m = parts.begin()->first;
    if (m < 1)
        throw std::invalid_argument("curve_on_hypersurface: hypersurface misses the origin");
    const Series<K>& fm = parts.begin()->second;
    if (!field_is_zero(fm.evaluate(z)))
        throw std::invalid_argument("curve_on_hypersurface: direction not on the tangent cone");

    int pivot = -1;
    for (int j = 0; j < n && pivot < 0; ++j) {
        if (forced_tails.count(j)) continue;
        if (!field_is_zero(fm.derivative(j).evaluate(z))) pivot = j;
    }
    if (pivot < 0)
        throw std::invalid_argument(
            "curve_on_hypersurface: no free coordinate with nonzero derivative");

    int scap = m + n_ord - 1;
    std::vector<Series<K>> phi;
    phi.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> c(1, scap);
        c.add_term({1}, z[i]);
        phi.push_back(std::move(c));
    }
    for (const auto& [i, tail] : forced_tails) {
        if (i < 0 || i >= n)
            throw std::invalid_argument("curve_on_hypersurface: tail index out of range");
        if (tail.nvars != 1)
            throw std::invalid_argument("curve_on_hypersurface: tail must be univariate");
        auto ord = tail.order();
        if (ord && *ord < 2)
            throw std::invalid_argument("curve_on_hypersurface: tail must start in degree 2");
        phi[(std::size_t)i] = phi[(std::size_t)i] + tail.truncated(scap);
    }

    // Kill the residual order by order; a correction c s^k on the pivot
    // moves the residual only in orders >= m - 1 + k.
    for (;;) {
        Series<K> res = f.substitute(phi);
        auto w = res.order();
        if (!w) break;
        if (*w <= m)
            throw std::logic_error("curve_on_hypersurface: residual order too low");
        int k = *w - m + 1;
        if (k > n_ord) break;
        Series<K> grad = f.derivative(pivot).substitute(phi);
        K lead = grad.coefficient({m - 1});
        if (field_is_zero(lead))
            throw std::logic_error("curve_on_hypersurface: pivot derivative degenerated");
        phi[(std::size_t)pivot].add_term({k}, -(res.coefficient({*w}) / lead));
    }
    Series<K> res = f.substitute(phi);
    if (!res.is_zero())
        throw std::logic_error("curve_on_hypersurface: lift did not terminate");

    for (Series<K>& c : phi) c = c.truncated(n_ord);
    return phi;
}

template <typename K = Rat>
struct SurfaceGerm {
    std::vector<Series<K>> components;  // binary series in (s, t)
    int m = 0;                          // multiplicity of the hypersurface
    int residual_floor = 0;             // f(components) = 0 mod (s,t)^{this}
};

namespace detail {

// Univariate series in s, viewed inside k[s,t] or k[y_1..y_n] at slot 0.
template <typename K>
inline Series<K> embed_univariate(const Series<K>& u, int nvars, int cap) {
    Series<K> out(nvars, cap);
    for (const auto& [e, c] : u.terms) {
        std::vector<int> ex(nvars, 0);
        ex[0] = e[0];
        out.add_term(ex, c);
    }
    return out;
}

}  // namespace detail

// Extend a curve phi(s) (linear part z s) to a surface Phi(s, t) with
// tangent plane (z, w), restriction Phi(s, 0) = phi, and
// f(Phi) = 0 mod (s,t)^{m+n_ord}.  Requires the plane on the tangent cone,
// the surjectivity hypothesis, and f(phi) = 0 mod s^{m+n_ord} (as produced
// by curve_on_hypersurface at the same order).
template <typename K>
inline SurfaceGerm<K> extend_curve_to_surface(const Series<K>& f,
                                              const std::vector<Series<K>>& phi,
                                              const LineSpec<K>& l, int n_ord) {
    int n = f.nvars;
    if ((int)phi.size() != n || (int)l.z.size() != n)
        throw std::invalid_argument("extend_curve_to_surface: arity mismatch");
    if (n_ord < 1)
        throw std::invalid_argument("extend_curve_to_surface: order must be positive");
    auto parts = homogeneous_decomposition(f);
    int m = parts.begin()->first;
    const Series<K>& fm = parts.begin()->second;
    if (!line_on_cone(fm, l))
        throw std::invalid_argument("extend_curve_to_surface: plane is not on the tangent cone");
    if (!dfm_surjective(fm, l))
        throw std::invalid_argument("extend_curve_to_surface: surjectivity hypothesis violated");

    const int cap = m + n_ord - 1;  // working precision, verifies mod degree m+n_ord

    // The curve must start along z and satisfy the equation through the
    // working precision; tail degrees beyond n_ord cannot repair a residual
    // below m + n_ord without moving the curve itself.
    std::vector<Series<K>> phic;
    phic.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Series<K>& c = phi[(std::size_t)i];
        if (c.nvars != 1)
            throw std::invalid_argument("extend_curve_to_surface: curve must be univariate");
        if (c.coefficient({0}) != K(0))
            throw std::invalid_argument("extend_curve_to_surface: curve misses the origin");
        if (c.coefficient({1}) != l.z[(std::size_t)i])
            throw std::invalid_argument(
                "extend_curve_to_surface: curve tangent differs from the first direction");
        phic.push_back(c.truncated(cap));
    }
    if (!f.substitute(phic).is_zero())
        throw std::invalid_argument(
            "extend_curve_to_surface: curve residual below order m + n_ord");

    // Adapted coordinates: x = M y with columns (z, w, ...).
    KMat<K> basis = complete_line_basis(l);
    auto inv = detail::kinverse(basis);
    if (!inv) throw std::logic_error("extend_curve_to_surface: basis not invertible");

    std::vector<Series<K>> yimages;
    yimages.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> im(n, cap);
        for (int j = 0; j < n; ++j) {
            std::vector<int> e(n, 0);
            e[j] = 1;
            im.add_term(e, basis[i][j]);
        }
        yimages.push_back(std::move(im));
    }
    Series<K> g = f.substitute(yimages);  // f in y-coordinates

    // Curve in y-coordinates; its first component is s + higher.
    std::vector<Series<K>> psi(n, Series<K>(1, cap));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            psi[(std::size_t)i] = psi[(std::size_t)i] +
                                  ((*inv)[i][j] * phic[(std::size_t)j]);

    // Reparametrize so the first component is exactly s.
    Series<K> sigma = univariate_inverse(psi[0]);
    std::vector<Series<K>> psih;
    psih.reserve(n);
    for (int i = 0; i < n; ++i) psih.push_back(univariate_compose(psi[(std::size_t)i], sigma));
    if (psih[0] != Series<K>::variable(1, cap, 0))
        throw std::logic_error("extend_curve_to_surface: reparametrization failed");

    // Shear the curve onto the y_1 axis: y_i -> y_i + psih_i(y_1) for i >= 2.
    std::vector<Series<K>> shear;
    shear.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> im = Series<K>::variable(n, cap, i);
        if (i >= 1) {
            // psih_i has no constant or linear part (the curve points along
            // e_1), so the shear is the identity on linear terms.
            if (psih[(std::size_t)i].coefficient({0}) != K(0) ||
                psih[(std::size_t)i].coefficient({1}) != K(0))
                throw std::logic_error("extend_curve_to_surface: curve not tangent to the axis");
            im = im + detail::embed_univariate(psih[(std::size_t)i], n, cap);
        }
        shear.push_back(std::move(im));
    }
    Series<K> gh = g.substitute(shear);
    for (const auto& [e, c] : gh.terms) {
        bool pure = true;
        for (int i = 1; i < n; ++i)
            if (e[(std::size_t)i]) { pure = false; break; }
        if (pure)
            throw std::logic_error("extend_curve_to_surface: sheared axis not on the surface");
    }

    std::vector<Series<K>> p = detail::plane_partials(fm, basis, m, cap);

    // Surface in sheared coordinates: (s, t, t A_3, ..., t A_n).
    std::vector<Series<K>> Phi;
    Phi.reserve(n);
    {
        Series<K> s2 = Series<K>::variable(2, cap, 0);
        Series<K> t2 = Series<K>::variable(2, cap, 1);
        Phi.push_back(s2);
        Phi.push_back(t2);
        for (int i = 2; i < n; ++i) Phi.push_back(Series<K>(2, cap));
    }

    for (int r = 1; r < n_ord; ++r) {
        Series<K> res = gh.substitute(Phi);
        auto w = res.order();
        if (!w) break;
        if (*w < m + r)
            throw std::logic_error("extend_curve_to_surface: residual dropped below schedule");
        if (*w > m + r) continue;
        Series<K> target = res.homogeneous_part(m + r);
        if (!field_is_zero(target.coefficient({m + r, 0})))
            throw std::logic_error("extend_curve_to_surface: pure-s residual reappeared");

        // Solve sum_i p_i(s,t) B_i(s,t) = -target/t with deg B_i = r.
        std::size_t unknowns = (std::size_t)(n - 2) * (std::size_t)(r + 1);
        std::size_t eqs = (std::size_t)(m + r);  // coefficients of degree m+r-1 forms
        KMat<K> a(eqs, std::vector<K>(unknowns, K(0)));
        std::vector<K> b(eqs, K(0));
        for (const auto& [e, c] : target.terms) {
            // target = t * C, row index = t-degree of C = e[1]-1.
            b[(std::size_t)(e[1] - 1)] = -c;
        }
        for (int i = 2; i < n; ++i) {
            const Series<K>& pi = p[(std::size_t)(i - 2)];
            for (int k = 0; k <= r; ++k) {
                std::size_t col = (std::size_t)(i - 2) * (r + 1) + (std::size_t)k;
                for (const auto& [e, c] : pi.terms) {
                    int tb = e[1] + k;  // p_i * s^{r-k} t^k
                    a[(std::size_t)tb][col] += c;
                }
            }
        }
        auto sol = detail::ksolve(a, b);
        if (!sol)
            throw std::logic_error("extend_curve_to_surface: normal system inconsistent");
        Series<K> t2 = Series<K>::variable(2, cap, 1);
        for (int i = 2; i < n; ++i) {
            Series<K> bform(2, cap);
            for (int k = 0; k <= r; ++k) {
                K c = (*sol)[(std::size_t)(i - 2) * (r + 1) + (std::size_t)k];
                bform.add_term({r - k, k}, c);
            }
            Phi[(std::size_t)i] = Phi[(std::size_t)i] + t2 * bform;
        }
    }
    if (!gh.substitute(Phi).is_zero())
        throw std::logic_error("extend_curve_to_surface: residual schedule incomplete");

    // Undo the shear, the reparametrization, and the linear change.
    std::vector<Series<K>> out_y;
    out_y.reserve(n);
    out_y.push_back(Phi[0]);
    for (int i = 1; i < n; ++i) {
        Series<K> back = Phi[(std::size_t)i] +
                         psih[(std::size_t)i].substitute({Phi[0]});
        out_y.push_back(std::move(back));
    }
    std::vector<Series<K>> reparam = {detail::embed_univariate(psi[0], 2, cap),
                                      Series<K>::variable(2, cap, 1)};
    for (Series<K>& comp : out_y) comp = comp.substitute(reparam);
    std::vector<Series<K>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Series<K> comp(2, cap);
        for (int j = 0; j < n; ++j) comp = comp + basis[i][j] * out_y[(std::size_t)j];
        out.push_back(std::move(comp));
    }

    // Contract checks.
    if (!f.substitute(out).is_zero())
        throw std::logic_error("extend_curve_to_surface: final residual too low");
    for (int i = 0; i < n; ++i) {
        if (out[(std::size_t)i].coefficient({1, 0}) != l.z[(std::size_t)i] ||
            out[(std::size_t)i].coefficient({0, 1}) != l.w[(std::size_t)i])
            throw std::logic_error("extend_curve_to_surface: tangent plane drifted");
        Series<K> restr(1, cap);
        for (const auto& [e, c] : out[(std::size_t)i].terms)
            if (e[1] == 0) restr.add_term({e[0]}, c);
        if (restr != phic[(std::size_t)i])
            throw std::logic_error("extend_curve_to_surface: restriction drifted");
    }
    return SurfaceGerm<K>{std::move(out), m, m + n_ord};
}

// Equations of the m-jet scheme of f = 0: substitute truncated arcs
// x_i = sum_j x_{i,j} t^j and collect the coefficients of t^0 .. t^m.
// Jet variable (i, j) sits at slot i*(m+1)+j.
template <typename K>
inline std::vector<Series<K>> jet_equations(const Series<K>& f, int m) {
    if (m < 0) throw std::invalid_argument("jet_equations: negative order");
    int n = f.nvars;
    int jn = n * (m + 1);
    int cap = 0;
    for (const auto& [e, c] : f.terms) {
        int d = 0;
        for (int x : e) d += x;
        cap = std::max(cap, d);
    }
    // Polynomials in t of degree <= m with Series coefficients.
    using TPoly = std::vector<Series<K>>;
    auto tzero = [&] { return TPoly((std::size_t)m + 1, Series<K>(jn, cap)); };
    auto tmul = [&](const TPoly& a, const TPoly& b) {
        TPoly out = tzero();
        for (int i = 0; i <= m; ++i)
            for (int j = 0; i + j <= m; ++j)
                out[(std::size_t)(i + j)] =
                    out[(std::size_t)(i + j)] + a[(std::size_t)i] * b[(std::size_t)j];
        return out;
    };
    std::vector<TPoly> vars;
    vars.reserve((std::size_t)n);
    for (int i = 0; i < n; ++i) {
        TPoly v = tzero();
        for (int j = 0; j <= m; ++j)
            v[(std::size_t)j] = Series<K>::variable(jn, cap, i * (m + 1) + j);
        vars.push_back(std::move(v));
    }
    TPoly total = tzero();
    for (const auto& [e, c] : f.terms) {
        TPoly term = tzero();
        term[0] = Series<K>::constant(jn, cap, c);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < e[(std::size_t)i]; ++k) term = tmul(term, vars[(std::size_t)i]);
        for (int j = 0; j <= m; ++j)
            total[(std::size_t)j] = total[(std::size_t)j] + term[(std::size_t)j];
    }
    return total;
}

// Strict transform of f = 0 under the blowup chart x_i -> x_c x_i (i != c):
// substitute and divide by the largest power of x_c.
template <typename K>
inline Series<K> blowup_chart_strict_transform(const Series<K>& f, int chart) {
    int n = f.nvars;
    if (chart < 0 || chart >= n)
        throw std::invalid_argument("blowup_chart_strict_transform: chart out of range");
    if (f.is_zero() || !field_is_zero(f.coefficient(std::vector<int>(n, 0))))
        throw std::invalid_argument(
            "blowup_chart_strict_transform: hypersurface does not pass through the origin");
    std::vector<std::pair<std::vector<int>, K>> terms;
    int min_pow = -1;
    for (const auto& [e, c] : f.terms) {
        int d = 0;
        for (int x : e) d += x;
        std::vector<int> ne = e;
        ne[(std::size_t)chart] = d;
        if (min_pow < 0 || d < min_pow) min_pow = d;
        terms.emplace_back(std::move(ne), c);
    }
    int cap = 0;
    for (auto& [e, c] : terms) {
        e[(std::size_t)chart] -= min_pow;
        int d = 0;
        for (int x : e) d += x;
        cap = std::max(cap, d);
    }
    Series<K> out(n, cap);
    for (auto& [e, c] : terms) out.add_term(e, c);
    return out;
}

}  // namespace nashtoric
