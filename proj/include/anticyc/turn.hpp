#pragma once

#include <map>
#include <optional>
#include <vector>

#include "anticyc/bigint.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/numbers.hpp"

namespace anticyc {

// An exact root of unity exp(2*pi*i * num/den), stored as a reduced
// fraction mod 1 ("turn"), or the exact value 0.  This is the value type of
// all finite-order character data: arithmetic on turns is exact, and the
// embeddings (complex / cyclotomic integer / p-adic ring) happen at the edge.
struct Turn {
    bool zero = false; // multiplicative zero (characters outside their support)
    Int num = 0;       // 0 <= num < den
    Int den = 1;

    Turn() = default;
    static Turn make_zero() { Turn t; t.zero = true; return t; }
    static Turn one() { return Turn(); }
    static Turn of(Int n, Int d) {
        if (d == 0) throw std::invalid_argument("Turn: zero denominator");
        if (d < 0) { d = -d; n = -n; }
        Int g = igcd(fmod(n, d), d);
        if (g == 0) g = d;
        Turn t;
        t.num = fmod(n, d) / g;
        t.den = d / g;
        return t;
    }

    bool is_zero() const { return zero; }
    bool is_one() const { return !zero && num == 0; }

    Turn operator*(const Turn& o) const {
        if (zero || o.zero) return make_zero();
        return of(num * o.den + o.num * den, den * o.den);
    }
    Turn inverse() const {
        if (zero) throw std::invalid_argument("Turn: inverse of zero");
        return of(-num, den);
    }
    Turn pow(Int e) const {
        if (zero) return make_zero();
        return of(num * e, den);
    }
    // conjugate = inverse for roots of unity
    Turn conjugate() const { return zero ? make_zero() : inverse(); }

    bool operator==(const Turn& o) const {
        if (zero != o.zero) return false;
        if (zero) return true;
        return num == o.num && den == o.den;
    }

    Cplx to_complex() const {
        if (zero) return Cplx{Real(0), Real(0)};
        return exp2pii_turn(Rat(num, den));
    }
    // order of the root of unity
    Int order() const {
        if (zero) throw std::invalid_argument("Turn: order of zero");
        return den;
    }
};

// Exact element of Z[zeta_N], stored as an integer vector of length N on
// the basis zeta_N^0..zeta_N^(N-1) modulo (x^N - 1).  Products are cyclic
// convolutions; canonicalization modulo the cyclotomic polynomial Phi_N is
// applied only for equality / rationality queries.  Sizes here are desk
// scale (N up to a few thousand), so schoolbook arithmetic is fine.
class CycInt {
public:
    explicit CycInt(long N) : N_(N), c_(N, Int(0)) {
        if (N <= 0) throw std::invalid_argument("CycInt: N must be positive");
    }
    static CycInt zero(long N) { return CycInt(N); }
    static CycInt root(long N, Int k) {
        CycInt z(N);
        z.c_[(long)fmod(k, N)] = 1;
        return z;
    }
    static CycInt integer(long N, Int v) {
        CycInt z(N);
        z.c_[0] = std::move(v);
        return z;
    }
    // Embeds a turn whose denominator divides N; -1 = e(1/2) embeds at any
    // level as the rational integer -1.
    static CycInt from_turn(long N, const Turn& t) {
        if (t.is_zero()) return zero(N);
        if (N % t.den == 0) return root(N, t.num * (N / t.den));
        if (t.den == 2) return integer(N, Int(-1));
        throw std::invalid_argument("CycInt: turn denominator does not divide N");
    }

    long level() const { return N_; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int& operator[](long i) { return c_[i]; }

    CycInt& operator+=(const CycInt& o) {
        check(o);
        for (long i = 0; i < N_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycInt& operator-=(const CycInt& o) {
        check(o);
        for (long i = 0; i < N_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check(b);
        CycInt r(a.N_);
        for (long i = 0; i < a.N_; ++i) {
            if (a.c_[i] == 0) continue;
            for (long j = 0; j < a.N_; ++j) {
                if (b.c_[j] == 0) continue;
                long k = i + j;
                if (k >= a.N_) k -= a.N_;
                r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    CycInt& operator*=(const CycInt& o) { return *this = *this * o; }
    CycInt& operator*=(const Int& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    // Galois conjugation zeta -> zeta^-1 (complex conjugation).
    CycInt conjugate() const {
        CycInt r(N_);
        for (long i = 0; i < N_; ++i) r.c_[(N_ - i) % N_] = c_[i];
        return r;
    }

    // Canonical representative modulo Phi_N: polynomial of degree < phi(N).
    // Implemented by exact division chains: reduce mod x^N - 1 first (already
    // the case), then subtract multiples of Phi_N.
    std::vector<Int> reduced() const {
        const std::vector<Int>& phi = cyclotomic_poly(N_);
        std::vector<Int> r = c_;
        long deg_phi = (long)phi.size() - 1;
        for (long d = N_ - 1; d >= deg_phi; --d) {
            if (r[d] == 0) continue;
            Int q = r[d]; // phi is monic
            for (long j = 0; j <= deg_phi; ++j) r[d - deg_phi + j] -= q * phi[j];
        }
        r.resize(deg_phi);
        return r;
    }

    bool operator==(const CycInt& o) const {
        check(o);
        return (*this - o).is_zero_value();
    }
    bool is_zero_value() const {
        for (auto& x : reduced())
            if (x != 0) return false;
        return true;
    }
    // If the element is a rational integer (modulo Phi_N), return it.
    std::optional<Int> as_integer() const {
        auto r = reduced();
        for (size_t i = 1; i < r.size(); ++i)
            if (r[i] != 0) return std::nullopt;
        return r[0];
    }

    Cplx to_complex() const {
        Cplx s;
        for (long i = 0; i < N_; ++i) {
            if (c_[i] == 0) continue;
            s += Cplx{to_real(c_[i]), Real(0)} * exp2pii_turn(Rat(i, N_));
        }
        return s;
    }

    // Cyclotomic polynomial Phi_N as an integer coefficient vector
    // (index = degree), computed by exact division of x^N - 1 by the
    // Phi_d for proper divisors d | N.  Cached per N.
    static const std::vector<Int>& cyclotomic_poly(long N);

private:
    void check(const CycInt& o) const {
        if (N_ != o.N_) throw std::invalid_argument("CycInt: level mismatch");
    }
    long N_;
    std::vector<Int> c_;
};

namespace detail {

// Exact division of integer polynomials, quotient must be integral and exact.
inline std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
    if (dd < 0 || den[dd] == 0) throw std::invalid_argument("poly_divide_exact: bad divisor");
    std::vector<Int> q(dn - dd + 1, Int(0));
    for (long d = dn; d >= dd; --d) {
        if (num[d] == 0) continue;
        if (num[d] % den[dd] != 0) throw std::invalid_argument("poly_divide_exact: not divisible");
        Int f = num[d] / den[dd];
        q[d - dd] = f;
        for (long j = 0; j <= dd; ++j) num[d - dd + j] -= f * den[j];
    }
    for (auto& r : num)
        if (r != 0) throw std::invalid_argument("poly_divide_exact: nonzero remainder");
    return q;
}

} // namespace detail

inline const std::vector<Int>& CycInt::cyclotomic_poly(long N) {
    static std::map<long, std::vector<Int>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<Int> num(N + 1, Int(0));
    num[0] = -1;
    num[N] = 1;
    for (long d = 1; d < N; ++d)
        if (N % d == 0) num = detail::poly_divide_exact(std::move(num), cyclotomic_poly(d));
    return cache.emplace(N, std::move(num)).first->second;
}

} // namespace anticyc
