// Truncated multivariate power series over an exact coefficient field.
// A series knows its variable count and a total-degree cap; terms above the
// cap are discarded on every operation, so arithmetic is exact modulo the
// ideal of degree > cap.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtoric/field.hpp"
#include "nashtoric/int_linalg.hpp"

namespace nashtoric {

template <typename K = Rat>
struct Series {
    int nvars = 0;
    int cap = 0;
    std::map<std::vector<int>, K> terms;  // exponent vector -> nonzero coeff

    Series() = default;
    Series(int nv, int degree_cap) : nvars(nv), cap(degree_cap) {
        if (nv < 0 || degree_cap < 0)
            throw std::invalid_argument("Series: negative variable count or cap");
    }

    static Series constant(int nv, int degree_cap, const K& c) {
        Series s(nv, degree_cap);
        s.add_term(std::vector<int>(nv, 0), c);
        return s;
    }
    static Series variable(int nv, int degree_cap, int i) {
        Series s(nv, degree_cap);
        std::vector<int> e(nv, 0);
        e[i] = 1;
        s.add_term(e, K(1));
        return s;
    }

    void add_term(const std::vector<int>& e, const K& c) {
        if ((int)e.size() != nvars)
            throw std::invalid_argument("Series: exponent arity mismatch");
        int d = 0;
        for (int x : e) {
            if (x < 0) throw std::invalid_argument("Series: negative exponent");
            d += x;
        }
        if (d > cap || field_is_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (field_is_zero(it->second)) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    K coefficient(const std::vector<int>& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? K(0) : it->second;
    }

    // Order of the lowest nonzero term; empty for the zero truncation.
    std::optional<int> order() const {
        std::optional<int> best;
        for (const auto& [e, c] : terms) {
            int d = 0;
            for (int x : e) d += x;
            if (!best || d < *best) best = d;
        }
        return best;
    }

    Series homogeneous_part(int d) const {
        Series out(nvars, cap);
        for (const auto& [e, c] : terms) {
            int deg = 0;
            for (int x : e) deg += x;
            if (deg == d) out.terms.emplace(e, c);
        }
        return out;
    }

    Series truncated(int new_cap) const {
        Series out(nvars, new_cap);
        for (const auto& [e, c] : terms) out.add_term(e, c);
        return out;
    }

    friend Series operator+(const Series& a, const Series& b) {
        check_compatible(a, b);
        Series out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, c);
        return out;
    }
    friend Series operator-(const Series& a, const Series& b) {
        check_compatible(a, b);
        Series out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, -c);
        return out;
    }
    friend Series operator-(const Series& a) {
        Series out(a.nvars, a.cap);
        for (const auto& [e, c] : a.terms) out.terms.emplace(e, -c);
        return out;
    }
    friend Series operator*(const Series& a, const Series& b) {
        check_compatible(a, b);
        Series out(a.nvars, a.cap);
        std::vector<int> e(a.nvars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                int d = 0;
                for (int i = 0; i < a.nvars; ++i) {
                    e[i] = ea[i] + eb[i];
                    d += e[i];
                }
                if (d <= a.cap) out.add_term(e, ca * cb);
            }
        return out;
    }
    friend Series operator*(const K& c, const Series& a) {
        Series out(a.nvars, a.cap);
        for (const auto& [e, coeff] : a.terms) out.add_term(e, c * coeff);
        return out;
    }
    friend bool operator==(const Series& a, const Series& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    Series pow(int k) const {
        Series out = constant(nvars, cap, K(1));
        for (int i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    Series derivative(int i) const {
        Series out(nvars, cap);
        for (const auto& [e, c] : terms) {
            if (e[i] == 0) continue;
            std::vector<int> d = e;
            d[i] -= 1;
            out.add_term(d, K((long)e[i]) * c);
        }
        return out;
    }

    // Substitute images[i] for variable i.  Images live in a common target
    // ring.  Each image must have order >= 1 so that source terms above the
    // target cap can be dropped soundly.
    Series substitute(const std::vector<Series>& images) const {
        if ((int)images.size() != nvars)
            throw std::invalid_argument("Series::substitute: image count mismatch");
        if (nvars == 0)
            throw std::invalid_argument("Series::substitute: no variables");
        int tv = images[0].nvars, tc = images[0].cap;
        for (const Series& im : images) {
            if (im.nvars != tv || im.cap != tc)
                throw std::invalid_argument("Series::substitute: inconsistent images");
            auto ord = im.order();
            if (ord && *ord < 1)
                throw std::invalid_argument("Series::substitute: image has a constant term");
        }
        // Memoized powers of each image.
        std::vector<std::vector<Series>> pows(nvars);
        for (int i = 0; i < nvars; ++i)
            pows[i].push_back(constant(tv, tc, K(1)));
        Series out(tv, tc);
        for (const auto& [e, c] : terms) {
            int d = 0;
            for (int x : e) d += x;
            if (d > tc) continue;  // images have order >= 1
            Series prod = constant(tv, tc, c);
            for (int i = 0; i < nvars; ++i) {
                while ((int)pows[i].size() <= e[i])
                    pows[i].push_back(pows[i].back() * images[i]);
                if (e[i]) prod = prod * pows[i][e[i]];
            }
            out = out + prod;
        }
        return out;
    }

    K evaluate(const std::vector<K>& point) const {
        if ((int)point.size() != nvars)
            throw std::invalid_argument("Series::evaluate: arity mismatch");
        K total(0);
        for (const auto& [e, c] : terms) {
            K v = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) v *= point[i];
            total += v;
        }
        return total;
    }

   private:
    static void check_compatible(const Series& a, const Series& b) {
        if (a.nvars != b.nvars || a.cap != b.cap)
            throw std::invalid_argument("Series: incompatible operands");
    }
};

// Homogeneous pieces f = sum_d f_d, lowest first.  Errors on the zero series.
template <typename K>
inline std::map<int, Series<K>> homogeneous_decomposition(const Series<K>& f) {
    if (f.is_zero())
        throw std::invalid_argument("homogeneous_decomposition: zero series");
    std::map<int, Series<K>> out;
    for (const auto& [e, c] : f.terms) {
        int d = 0;
        for (int x : e) d += x;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Series<K>(f.nvars, f.cap)).first;
        it->second.terms.emplace(e, c);
    }
    return out;
}

// One-variable helpers for curves phi(s).

template <typename K>
inline Series<K> univariate_compose(const Series<K>& f, const Series<K>& g) {
    return f.substitute({g});
}

// Compositional inverse of g = s + O(s^2): the unique h with g(h(s)) = s
// modulo the cap.
template <typename K>
inline Series<K> univariate_inverse(const Series<K>& g) {
    if (g.nvars != 1)
        throw std::invalid_argument("univariate_inverse: expected one variable");
    if (g.coefficient({0}) != K(0) || g.coefficient({1}) != K(1))
        throw std::invalid_argument("univariate_inverse: series must start with s");
    Series<K> h = Series<K>::variable(1, g.cap, 0);
    for (int k = 2; k <= g.cap; ++k) {
        Series<K> r = univariate_compose(g, h);
        // g(h) = s + c s^k + ...; kill c by shifting h at degree k.
        K c = r.coefficient({k});
        h.add_term({k}, -c);
    }
    Series<K> check = univariate_compose(g, h);
    if (check != Series<K>::variable(1, g.cap, 0))
        throw std::logic_error("univariate_inverse: inversion failed");
    return h;
}

}  // namespace nashtoric
