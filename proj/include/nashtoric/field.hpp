// Coefficient fields for the series engine: exact rationals (the default,
// via GMP) and prime fields F_p with a runtime modulus for characteristic-p
// experiments.

#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace nashtoric {

// Element of F_p with the modulus carried alongside the value.  A value with
// modulus 0 is an "integer constant" compatible with any modulus; it is
// reduced as soon as it meets a genuine F_p element.
struct Fp {
    long long v = 0;
    long long p = 0;

    Fp() = default;
    Fp(long long value) : v(value) {}
    Fp(long long value, long long modulus) : v(value), p(modulus) { reduce(); }

    void reduce() {
        if (p) {
            v %= p;
            if (v < 0) v += p;
        }
    }
    static long long join(long long a, long long b) {
        if (a && b && a != b) throw std::invalid_argument("Fp: modulus mismatch");
        return a ? a : b;
    }
    Fp with_modulus(long long modulus) const { return Fp(v, modulus); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        return Fp(a.v + b.v, join(a.p, b.p));
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        return Fp(a.v - b.v, join(a.p, b.p));
    }
    friend Fp operator-(const Fp& a) { return Fp(-a.v, a.p); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        return Fp(a.v * b.v, join(a.p, b.p));
    }
    friend Fp operator/(const Fp& a, const Fp& b) {
        long long p = join(a.p, b.p);
        if (!p) {
            if (b.v == 1) return a;
            if (b.v == -1) return Fp(-a.v, 0);
            throw std::invalid_argument("Fp: division without a modulus");
        }
        // Inverse by extended Euclid.
        long long bb = b.v % p;
        if (bb < 0) bb += p;
        if (bb == 0) throw std::invalid_argument("Fp: division by zero");
        long long t = 0, nt = 1, r = p, nr = bb;
        while (nr) {
            long long q = r / nr;
            long long tmp = t - q * nt;
            t = nt; nt = tmp;
            tmp = r - q * nr;
            r = nr; nr = tmp;
        }
        if (r != 1) throw std::invalid_argument("Fp: modulus is not prime");
        if (t < 0) t += p;
        return Fp(a.v, p) * Fp(t, p);
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        long long p = join(a.p, b.p);
        if (!p) return a.v == b.v;
        long long av = a.v % p, bv = b.v % p;
        if (av < 0) av += p;
        if (bv < 0) bv += p;
        return av == bv;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

template <typename K>
inline bool field_is_zero(const K& x) {
    return x == K(0);
}

}  // namespace nashtoric
