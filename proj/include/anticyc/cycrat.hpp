#pragma once

#include <map>
#include <optional>
#include <vector>

#include "anticyc/bigint.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/numbers.hpp"
#include "anticyc/quadfield.hpp"
#include "anticyc/turn.hpp"

namespace anticyc {

// An exact cyclotomic rational: an element of Q(zeta_N) as a dense rational
// coefficient vector on 1, zeta, ..., zeta^{N-1} taken mod zeta^N - 1.
// Arithmetic promotes operands to the lcm level; canonicalization mod the
// cyclotomic polynomial Phi_N happens only in equality / rationality queries.
// Square roots of integers embed exactly through quadratic Gauss sums, with
// the root choice sqrt(n) > 0 for n > 0 and sqrt(n) = i*sqrt(|n|) for n < 0,
// so every coefficient field this library needs (twist values, Satake roots,
// CM theta coefficients) lives here canonically.
class CycRat {
public:
    CycRat() : N_(1), c_{Rat(0)} {}
    explicit CycRat(const Rat& r) : N_(1), c_{r} {}
    explicit CycRat(const Int& v) : N_(1), c_{Rat(v)} {}
    explicit CycRat(long v) : N_(1), c_{Rat(v)} {}

    static CycRat root(long N, const Int& k) {
        CycRat z;
        z.N_ = N;
        z.c_.assign(N, Rat(0));
        z.c_[(long)fmod(k, Int(N))] = 1;
        return z;
    }
    static CycRat from_turn(const Turn& t) {
        if (t.is_zero()) return CycRat();
        return root((long)t.den, t.num);
    }
    // Exact square root of a nonzero integer: split off the square part and
    // embed the squarefree remainder via the Gauss sum of the quadratic
    // character of its field discriminant.
    static CycRat sqrt_of(Int n) {
        if (n == 0) return CycRat();
        Int s = 1, m = n < 0 ? Int(-1) : Int(1);
        for (auto& [p, e] : factorize(n < 0 ? -n : n)) {
            s *= ipow(p, e / 2);
            if (e % 2) m *= p;
        }
        if (m == 1) return CycRat(Rat(s));
        if (m == -1) return root(4, 1) * Rat(s); // i
        Int disc = fmod(m, Int(4)) == 1 ? m : 4 * m;
        long q = (long)Int(disc < 0 ? -disc : disc);
        CycRat g;
        g.N_ = q;
        g.c_.assign(q, Rat(0));
        for (long u = 1; u < q; ++u) g.c_[u] = Rat(kronecker(disc, Int(u)));
        // G = sqrt(disc) in the declared embedding; sqrt(m) = G or G/2
        return g * (disc == m ? Rat(s) : Rat(s, 2));
    }
    // x + y*sqrt(d) for a field element (d need not be squarefree).
    static CycRat from_quad(const QuadElem& e) {
        return CycRat(e.x()) + sqrt_of(e.field_disc()) * e.y();
    }

    long level() const { return N_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    CycRat promoted(long L) const {
        if (L % N_ != 0)
            throw CyclotomicLevelTooSmall("CycRat: cannot demote cyclotomic level");
        CycRat r;
        r.N_ = L;
        r.c_.assign(L, Rat(0));
        for (long j = 0; j < N_; ++j) r.c_[j * (L / N_)] = c_[j];
        return r;
    }

    CycRat operator-() const {
        CycRat r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend CycRat operator+(const CycRat& a, const CycRat& b) {
        long L = (long)ilcm(Int(a.N_), Int(b.N_));
        CycRat x = a.promoted(L), y = b.promoted(L);
        for (long j = 0; j < L; ++j) x.c_[j] += y.c_[j];
        return x;
    }
    friend CycRat operator-(const CycRat& a, const CycRat& b) { return a + (-b); }
    friend CycRat operator*(const CycRat& a, const CycRat& b) {
        long L = (long)ilcm(Int(a.N_), Int(b.N_));
        CycRat x = a.promoted(L), y = b.promoted(L);
        CycRat r;
        r.N_ = L;
        r.c_.assign(L, Rat(0));
        for (long i = 0; i < L; ++i) {
            if (x.c_[i] == 0) continue;
            for (long j = 0; j < L; ++j) {
                if (y.c_[j] == 0) continue;
                r.c_[(i + j) % L] += x.c_[i] * y.c_[j];
            }
        }
        return r;
    }
    CycRat operator*(const Rat& s) const {
        CycRat r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    CycRat& operator+=(const CycRat& o) { return *this = *this + o; }
    CycRat& operator-=(const CycRat& o) { return *this = *this - o; }
    CycRat& operator*=(const CycRat& o) { return *this = *this * o; }

    CycRat conjugate() const {
        CycRat r;
        r.N_ = N_;
        r.c_.assign(N_, Rat(0));
        for (long j = 0; j < N_; ++j) r.c_[(N_ - j) % N_] = c_[j];
        return r;
    }
    CycRat pow(long e) const {
        CycRat r(Rat(1)), b = *this;
        if (e < 0) throw std::invalid_argument("CycRat: negative power");
        for (; e > 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    }

    // Canonical representative mod Phi_N: degree < phi(N).
    std::vector<Rat> reduced() const {
        const std::vector<Int>& phi = CycInt::cyclotomic_poly(N_);
        std::vector<Rat> r = c_;
        long deg = (long)phi.size() - 1;
        for (long i = N_ - 1; i >= deg; --i) {
            if (r[i] == 0) continue;
            Rat f = r[i]; // phi is monic
            for (long j = 0; j <= deg; ++j) r[i - deg + j] -= f * phi[j];
        }
        r.resize(deg);
        return r;
    }
    bool is_zero() const {
        for (auto& v : reduced())
            if (v != 0) return false;
        return true;
    }
    friend bool operator==(const CycRat& a, const CycRat& b) { return (a - b).is_zero(); }
    std::optional<Rat> as_rational() const {
        auto r = reduced();
        for (size_t j = 1; j < r.size(); ++j)
            if (r[j] != 0) return std::nullopt;
        return r.empty() ? Rat(0) : r[0];
    }

    Cplx to_complex() const {
        const std::vector<Cplx>& roots = root_table(N_);
        Cplx s;
        for (long j = 0; j < N_; ++j) {
            if (c_[j] == 0) continue;
            s = s + roots[j] * to_real(c_[j]);
        }
        return s;
    }

private:
    static const std::vector<Cplx>& root_table(long N) {
        static std::map<long, std::vector<Cplx>> cache;
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
        std::vector<Cplx> r;
        r.reserve(N);
        for (long j = 0; j < N; ++j) r.push_back(exp2pii_turn(Rat(j, N)));
        return cache.emplace(N, std::move(r)).first->second;
    }

    long N_;
    std::vector<Rat> c_;
};

inline CycRat operator*(const Rat& s, const CycRat& x) { return x * s; }

} // namespace anticyc
