#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

namespace anticyc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int igcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int ilcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Floor division/modulo with nonnegative remainder (cpp_int '/' truncates).
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}
inline Int fmod(const Int& a, const Int& b) {
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

// Extended gcd: returns g and sets x, y with a*x + b*y = g >= 0.
inline Int egcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0; y = y0;
    return a;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int x, y;
    Int g = egcd(fmod(a, m), m, x, y);
    if (g != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return fmod(x, m);
}

inline Int mod_pow(Int base, Int e, const Int& m) {
    Int r = 1;
    base = fmod(base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

// Trial-division factorization; fine at desk scale (arguments < 2^64-ish).
inline std::map<Int, unsigned> factorize(Int n) {
    std::map<Int, unsigned> f;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

inline Int euler_phi(const Int& n) {
    Int r = 1;
    for (auto& [p, e] : factorize(n)) r *= ipow(p, e - 1) * (p - 1);
    return r;
}

// Smallest positive primitive root mod p^e (p odd prime).
inline Int primitive_root(const Int& pe) {
    auto f = factorize(pe);
    if (f.size() != 1) throw std::invalid_argument("primitive_root: not a prime power");
    Int p = f.begin()->first;
    unsigned e = f.begin()->second;
    if (p == 2) throw std::invalid_argument("primitive_root: p = 2 unsupported");
    Int order_p = p - 1;
    auto qs = factorize(order_p);
    Int g = 0;
    for (Int c = 2; c < p; ++c) {
        bool ok = true;
        for (auto& [q, m] : qs)
            if (mod_pow(c, order_p / q, p) == 1) { ok = false; break; }
        if (ok) { g = c; break; }
    }
    if (e == 1) return g;
    // Lift to p^e: g works unless g^(p-1) = 1 mod p^2.
    if (mod_pow(g, p - 1, p * p) == 1) g += p;
    return g;
}

inline Int isqrt_floor(const Int& n) { return boost::multiprecision::sqrt(n); }

// Legendre/Kronecker symbol (a|n) for odd prime n; returns -1, 0, 1.
inline int legendre(const Int& a, const Int& p) {
    Int r = mod_pow(fmod(a, p), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// Kronecker symbol (d|n), used for quadratic characters attached to
// discriminants; standard multiplicative extension including n = 2.
inline int kronecker(Int d, Int n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) sign = -sign;
    }
    while (n % 2 == 0) {
        n /= 2;
        Int m = fmod(d, 8);
        if (m == 0 || m % 2 == 0) return 0;
        if (m == 3 || m == 5) sign = -sign;
    }
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) continue;
        int l = legendre(d, p);
        if (l == 0) return 0;
        if (l == -1 && e % 2 == 1) sign = -sign;
    }
    return sign;
}

// Square root of a mod p^e for odd p with (a|p) = 1; Tonelli + Hensel lift.
inline Int sqrt_mod_ppow(const Int& a, const Int& p, unsigned e) {
    // Tonelli-Shanks mod p.
    Int aa = fmod(a, p);
    if (aa == 0) throw std::invalid_argument("sqrt_mod_ppow: a divisible by p");
    if (legendre(aa, p) != 1) throw std::invalid_argument("sqrt_mod_ppow: non-residue");
    Int x;
    if (p % 4 == 3) {
        x = mod_pow(aa, (p + 1) / 4, p);
    } else {
        Int q = p - 1; unsigned s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        Int z = 2;
        while (legendre(z, p) != -1) ++z;
        Int m = s, c = mod_pow(z, q, p), t = mod_pow(aa, q, p), r = mod_pow(aa, (q + 1) / 2, p);
        while (t != 1) {
            Int i = 0, tt = t;
            while (tt != 1) { tt = tt * tt % p; ++i; }
            Int b = mod_pow(c, ipow(2, unsigned(m - i - 1)), p);
            m = i; c = b * b % p; t = t * c % p; r = r * b % p;
        }
        x = r;
    }
    // Hensel lift to p^e.
    Int pk = p;
    for (unsigned k = 1; k < e; ++k) {
        Int pk1 = pk * p;
        Int num = fmod(a - x * x, pk1);
        Int corr = fmod(num / pk * mod_inverse(2 * x, p), p);
        x = fmod(x + corr * pk, pk1);
        pk = pk1;
    }
    return x;
}

} // namespace anticyc
