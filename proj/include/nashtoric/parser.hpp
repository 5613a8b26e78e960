// Parsers for the text input formats: polynomials in x1..xn (integer or
// rational coefficients, operators + - * / ^ and parentheses), univariate
// series tails in s, and Laurent components in t with negative exponents.

#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtoric/arc.hpp"
#include "nashtoric/field.hpp"
#include "nashtoric/series.hpp"

namespace nashtoric {

namespace detail {

// Sparse Laurent polynomial in named variables; exponents may be negative
// when the caller allows it.
struct ParsedPoly {
    std::map<std::vector<long>, Rat> terms;
};

class PolyParser {
   public:
    PolyParser(const std::string& src, std::map<std::string, std::size_t> vars,
               bool allow_negative)
        : src_(src), vars_(std::move(vars)), neg_ok_(allow_negative) {}

    ParsedPoly parse() {
        ParsedPoly p = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw std::invalid_argument("polynomial: trailing input at '" +
                                        src_.substr(pos_) + "'");
        return p;
    }

   private:
    const std::string& src_;
    std::map<std::string, std::size_t> vars_;
    bool neg_ok_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    std::size_t nvars() const { return vars_.size(); }

    static ParsedPoly add(const ParsedPoly& a, const ParsedPoly& b, int sign) {
        ParsedPoly out = a;
        for (const auto& [e, c] : b.terms) {
            Rat& slot = out.terms[e];
            slot += sign > 0 ? c : -c;
            if (slot == 0) out.terms.erase(e);
        }
        return out;
    }
    ParsedPoly mul(const ParsedPoly& a, const ParsedPoly& b) const {
        ParsedPoly out;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<long> e(nvars());
                for (std::size_t i = 0; i < nvars(); ++i) e[i] = ea[i] + eb[i];
                Rat& slot = out.terms[e];
                slot += ca * cb;
                if (slot == 0) out.terms.erase(e);
            }
        return out;
    }
    ParsedPoly constant(const Rat& c) const {
        ParsedPoly out;
        if (c != 0) out.terms.emplace(std::vector<long>(nvars(), 0), c);
        return out;
    }

    ParsedPoly expr() {
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        ParsedPoly total = add(ParsedPoly{}, term(), sign);
        for (;;) {
            if (eat('+')) total = add(total, term(), 1);
            else if (eat('-')) total = add(total, term(), -1);
            else return total;
        }
    }

    ParsedPoly term() {
        ParsedPoly total = factor();
        for (;;) {
            if (eat('*')) {
                total = mul(total, factor());
            } else if (eat('/')) {
                ParsedPoly d = factor();
                if (d.terms.size() != 1 ||
                    d.terms.begin()->first != std::vector<long>(nvars(), 0))
                    throw std::invalid_argument("polynomial: division by a non-constant");
                total = mul(total, constant(Rat(1) / d.terms.begin()->second));
            } else {
                return total;
            }
        }
    }

    ParsedPoly factor() {
        if (eat('-')) return add(ParsedPoly{}, factor(), -1);
        ParsedPoly base = atom();
        if (eat('^')) {
            long e = integer();
            if (e < 0)
                throw std::invalid_argument("polynomial: negative exponent on a compound base");
            // A negative exponent is only meaningful on a bare variable and
            // is handled inside atom(); here we exponentiate the value.
            ParsedPoly out = constant(1);
            for (long i = 0; i < e; ++i) out = mul(out, base);
            return out;
        }
        return base;
    }

    ParsedPoly atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            ParsedPoly inner = expr();
            if (!eat(')')) throw std::invalid_argument("polynomial: missing ')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c)) return constant(Rat(number()));
        if (std::isalpha((unsigned char)c)) {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
                name += src_[pos_++];
            auto it = vars_.find(name);
            if (it == vars_.end())
                throw std::invalid_argument("polynomial: unknown variable '" + name + "'");
            long e = 1;
            std::size_t save = pos_;
            if (eat('^')) {
                e = integer();
                if (e < 0 && !neg_ok_) {
                    pos_ = save;
                    throw std::invalid_argument("polynomial: negative exponent");
                }
            }
            ParsedPoly out;
            std::vector<long> ev(nvars(), 0);
            ev[it->second] = e;
            out.terms.emplace(std::move(ev), Rat(1));
            return out;
        }
        throw std::invalid_argument(std::string("polynomial: unexpected character '") +
                                    c + "'");
    }

    long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < src_.size() && src_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit((unsigned char)src_[pos_]))
            throw std::invalid_argument("polynomial: expected an integer");
        long v = 0;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000000L) throw std::invalid_argument("polynomial: exponent too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Int number() {
        skip_ws();
        std::string digits;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
            digits += src_[pos_++];
        if (digits.empty()) throw std::invalid_argument("polynomial: expected a number");
        return Int(digits);
    }
};

inline std::map<std::string, std::size_t> x_variables(std::size_t n) {
    std::map<std::string, std::size_t> vars;
    for (std::size_t i = 0; i < n; ++i) vars["x" + std::to_string(i + 1)] = i;
    return vars;
}

}  // namespace detail

// Polynomial in x1..xn with rational coefficients.
inline Series<Rat> parse_polynomial(const std::string& src, std::size_t nvars) {
    detail::PolyParser p(src, detail::x_variables(nvars), false);
    detail::ParsedPoly poly = p.parse();
    long cap = 0;
    for (const auto& [e, c] : poly.terms) {
        long d = 0;
        for (long x : e) d += x;
        cap = std::max(cap, d);
    }
    Series<Rat> out((int)nvars, (int)cap);
    for (const auto& [e, c] : poly.terms) {
        std::vector<int> ie(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ie[i] = (int)e[i];
        out.add_term(ie, c);
    }
    return out;
}

// Univariate polynomial in the named variable (for curve tails in s).
inline Series<Rat> parse_univariate(const std::string& src, const std::string& var,
                                    int cap) {
    detail::PolyParser p(src, {{var, 0}}, false);
    detail::ParsedPoly poly = p.parse();
    Series<Rat> out(1, cap);
    for (const auto& [e, c] : poly.terms) {
        if (e[0] > cap)
            throw std::invalid_argument("series: term beyond the truncation order");
        out.add_term({(int)e[0]}, c);
    }
    return out;
}

// One Laurent component in t, e.g. "t^-2 + 3*t + t^4".
inline LaurentComponent parse_laurent_component(const std::string& src, long trunc) {
    detail::PolyParser p(src, {{"t", 0}}, true);
    detail::ParsedPoly poly = p.parse();
    LaurentComponent out;
    out.trunc = trunc;
    if (poly.terms.empty()) return out;
    long lo = poly.terms.begin()->first[0];
    long hi = poly.terms.rbegin()->first[0];
    if (hi > trunc)
        throw std::invalid_argument("arc component: term beyond the truncation order");
    out.ord = lo;
    out.coeffs.assign((std::size_t)(hi - lo + 1), 0);
    for (const auto& [e, c] : poly.terms) out.coeffs[(std::size_t)(e[0] - lo)] = c;
    out.normalize();
    return out;
}

// Comma-separated Laurent components forming an arc through the torus.
inline TorusArc parse_arc(const std::string& src, long trunc) {
    std::vector<LaurentComponent> comps;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= src.size(); ++i) {
        if (i < src.size() && src[i] == '(') ++depth;
        if (i < src.size() && src[i] == ')') --depth;
        if (i == src.size() || (src[i] == ',' && depth == 0)) {
            comps.push_back(parse_laurent_component(src.substr(start, i - start), trunc));
            start = i + 1;
        }
    }
    return make_torus_arc(std::move(comps));
}

// Reduce a rational-coefficient series modulo a prime (denominators must be
// invertible mod p).
inline Series<Fp> series_mod_p(const Series<Rat>& f, long long p) {
    Series<Fp> out(f.nvars, f.cap);
    for (const auto& [e, c] : f.terms) {
        Int modulus((long)p);
        Int num = c.get_num() % modulus;
        Int den = c.get_den() % modulus;
        Fp fc = Fp(num.get_si(), p) / Fp(den.get_si(), p);
        out.add_term(e, fc);
    }
    return out;
}

}  // namespace nashtoric
