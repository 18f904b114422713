#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <ostream>
#include <string>

#include "anticyc/bigint.hpp"

namespace anticyc {

// Working precision: 50 decimal digits (>= the 40-digit default the numeric
// modules promise; the extra digits are guard digits).
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>>;

inline const Real& pi_value() {
    static const Real pi = atan(Real(1)) * 4;
    return pi;
}

inline Real to_real(const Int& n) { return Real(n.str()); }
inline Real to_real(const Rat& r) {
    return to_real(boost::multiprecision::numerator(r)) /
           to_real(boost::multiprecision::denominator(r));
}

// Minimal complex type over Real.  std::complex is not reliable over
// user-defined floats, and this keeps every operation explicit.
struct Cplx {
    Real re{0}, im{0};

    Cplx() = default;
    Cplx(Real r) : re(std::move(r)) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(int n) : re(n) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Cplx& operator/=(const Cplx& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
    friend Cplx operator/(Cplx a, const Cplx& b) { return a /= b; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
};

inline Cplx conj(const Cplx& z) { return {z.re, -z.im}; }
inline Real norm(const Cplx& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Cplx& z) { return sqrt(norm(z)); }
inline Cplx i_times(const Cplx& z) { return {-z.im, z.re}; }

inline Cplx exp(const Cplx& z) {
    Real m = boost::multiprecision::exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

inline Cplx log(const Cplx& z) {
    return {boost::multiprecision::log(abs(z)), atan2(z.im, z.re)};
}

// Principal square root.
inline Cplx sqrt(const Cplx& z) {
    Real r = abs(z);
    if (r == 0) return {Real(0), Real(0)};
    Real u = sqrt((r + z.re) / 2);
    Real v = sqrt((r - z.re) / 2);
    if (z.im < 0) v = -v;
    return {u, v};
}

inline Cplx ipow(Cplx base, long e) {
    bool inv = e < 0;
    unsigned long n = inv ? -(unsigned long)e : (unsigned long)e;
    Cplx r{Real(1), Real(0)};
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) r = Cplx{Real(1), Real(0)} / r;
    return r;
}

// exp(2*pi*i * x)
inline Cplx exp2pii(const Real& x) {
    Real t = 2 * pi_value() * x;
    return {cos(t), sin(t)};
}

// exp(2*pi*i * a/b) for an exact rational turn a/b.
inline Cplx exp2pii_turn(const Rat& turn) { return exp2pii(to_real(turn)); }

inline std::string to_string(const Real& x, unsigned digits = 40) {
    return x.str(digits);
}

inline std::ostream& operator<<(std::ostream& os, const Cplx& z) {
    return os << "(" << z.re.str(30) << (z.im < 0 ? "" : "+") << z.im.str(30) << "i)";
}

} // namespace anticyc
