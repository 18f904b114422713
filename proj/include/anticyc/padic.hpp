#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "anticyc/bigint.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/qexp.hpp"
#include "anticyc/turn.hpp"

namespace anticyc {

// ---------------------------------------------------------------------------
// Finite-precision coefficient ring for the measure calculus: vectors over
// Z/p^M modulo the p^n-th cyclotomic polynomial (level_exp n, level 1 ring
// when n = 0).  This is the computable stand-in for a p-adically complete
// coefficient ring; every identity is checked modulo the tracked number of
// valid p-adic digits.
// ---------------------------------------------------------------------------

using PVec = std::vector<uint64_t>;

struct PCoeffRing {
    long p;
    int precision;  // M: scalars live in Z/p^M
    int level_exp;  // n: the ring contains a primitive p^n-th root of unity
    uint64_t pM;    // p^M
    long pn;        // p^n
    long pnm1;      // p^{n-1} (0 when n = 0)
    long dim;       // vector length phi(p^n), or 1 when n = 0

    PCoeffRing(long p_, int M, int n) : p(p_), precision(M), level_exp(n) {
        if (p_ < 2 || M < 1 || n < 0) throw BoundExceeded("PCoeffRing: bad parameters");
        Int big = ipow(Int(p_), M);
        if (big > Int("18446744073709551615"))
            throw BoundExceeded("PCoeffRing: p^M does not fit in 64 bits");
        pM = (unsigned long long)big;
        pn = 1;
        for (int i = 0; i < n; ++i) pn *= p_;
        pnm1 = n > 0 ? pn / p_ : 0;
        dim = n == 0 ? 1 : pn - pnm1;
    }

    static int max_precision(long p) {
        int M = 0;
        Int v = 1;
        while (v * p <= Int("18446744073709551615")) { v *= p; ++M; }
        return M;
    }

    // ---- scalar arithmetic mod p^M ----
    uint64_t sadd(uint64_t a, uint64_t b) const {
        unsigned __int128 s = (unsigned __int128)a + b;
        return (uint64_t)(s % pM);
    }
    uint64_t ssub(uint64_t a, uint64_t b) const { return sadd(a, b == 0 ? 0 : pM - b); }
    uint64_t smul(uint64_t a, uint64_t b) const {
        return (uint64_t)((unsigned __int128)a * b % pM);
    }
    uint64_t snorm(const Int& x) const { return (unsigned long long)fmod(x, Int(pM)); }
    uint64_t spow_u(uint64_t a, uint64_t e) const {
        uint64_t r = 1 % pM;
        while (e) {
            if (e & 1) r = smul(r, a);
            a = smul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t sinv(uint64_t a) const {
        if (a % p == 0) throw CoefficientNotIntegral("p divides a denominator");
        return snorm(mod_inverse(Int(a), Int(pM)));
    }
    // Teichmuller lift: omega(a) = a^{p^{M-1}} is the unique (p-1)-st root of
    // unity congruent to a mod p.
    uint64_t teichmuller(uint64_t a) const {
        uint64_t r = a % pM;
        for (int i = 0; i < precision - 1; ++i) r = spow_u(r, (uint64_t)p);
        return r;
    }

    // ---- element (vector) arithmetic ----
    PVec zero() const { return PVec(dim, 0); }
    PVec one() const {
        PVec v(dim, 0);
        v[0] = 1 % pM;
        return v;
    }
    PVec from_scalar(uint64_t c) const {
        PVec v(dim, 0);
        v[0] = c % pM;
        return v;
    }
    PVec from_int(const Int& x) const { return from_scalar(snorm(x)); }
    PVec from_rat(const Rat& r) const {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        Int den = denominator(r);
        if (fmod(den, Int(p)) == 0)
            throw CoefficientNotIntegral("coefficient denominator divisible by p");
        return from_scalar(smul(snorm(numerator(r)), sinv(snorm(den))));
    }

    // reduce a raw polynomial (any length) modulo Phi_{p^n}(x), in place:
    // x^dim = -(1 + x^{p^{n-1}} + ... + x^{(p-2)p^{n-1}}) applied top down
    void reduce(std::vector<uint64_t>& w) const {
        if (level_exp == 0) {
            w.resize(1);
            return;
        }
        for (long deg = (long)w.size() - 1; deg >= dim; --deg) {
            uint64_t c = w[deg];
            if (!c) continue;
            w[deg] = 0;
            for (long i = 0; i < p - 1; ++i) {
                long pos = deg - dim + i * pnm1;
                w[pos] = ssub(w[pos], c);
            }
        }
        w.resize(dim);
    }

    // zeta_{p^n}^j
    PVec root(long j) const {
        if (level_exp == 0) return one();
        j = ((j % pn) + pn) % pn;
        std::vector<uint64_t> w(j + 1, 0);
        w[j] = 1 % pM;
        reduce(w);
        return w;
    }

    PVec add(const PVec& a, const PVec& b) const {
        PVec r(dim);
        for (long i = 0; i < dim; ++i) r[i] = sadd(a[i], b[i]);
        return r;
    }
    PVec sub(const PVec& a, const PVec& b) const {
        PVec r(dim);
        for (long i = 0; i < dim; ++i) r[i] = ssub(a[i], b[i]);
        return r;
    }
    PVec neg(const PVec& a) const {
        PVec r(dim);
        for (long i = 0; i < dim; ++i) r[i] = ssub(0, a[i]);
        return r;
    }
    PVec scale(const PVec& a, uint64_t c) const {
        PVec r(dim);
        for (long i = 0; i < dim; ++i) r[i] = smul(a[i], c);
        return r;
    }
    PVec mul(const PVec& a, const PVec& b) const {
        if (dim == 1) return {smul(a[0], b[0])};
        std::vector<uint64_t> w(2 * dim - 1, 0);
        for (long i = 0; i < dim; ++i) {
            if (!a[i]) continue;
            for (long j = 0; j < dim; ++j)
                if (b[j]) w[i + j] = sadd(w[i + j], smul(a[i], b[j]));
        }
        reduce(w);
        return w;
    }
    PVec pow(PVec a, uint64_t e) const {
        PVec r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool eq_mod(const PVec& a, const PVec& b, int digits) const {
        if (digits <= 0) throw PrecisionExhausted("no valid p-adic digits remain");
        uint64_t m = digits >= precision ? pM : (unsigned long long)ipow(Int(p), digits);
        for (long i = 0; i < dim; ++i)
            if ((a[i] % m + m - b[i] % m) % m != 0) return false;
        return true;
    }
    bool is_zero_mod(const PVec& a, int digits) const { return eq_mod(a, zero(), digits); }

    // exact division by p^k (each coordinate must be divisible in Z/p^M);
    // the quotient is meaningful modulo p^{M-k} only
    PVec divide_exact(const PVec& a, int k) const {
        if (k == 0) return a;
        if (k < 0 || k > precision) throw DivisionNotExact("division exponent out of range");
        uint64_t pk = (unsigned long long)ipow(Int(p), k);
        PVec r(dim);
        for (long i = 0; i < dim; ++i) {
            if (a[i] % pk != 0)
                throw DivisionNotExact("coordinate not divisible by p^" + std::to_string(k));
            r[i] = a[i] / pk;
        }
        return r;
    }

    // exact root of unity of order dividing (p-1) p^n attached to a Turn
    PVec embed_turn(const Turn& t) const {
        if (t.is_zero()) return zero();
        Int den = t.den, num = fmod(t.num, t.den);
        Int d1 = 1, pe = 1;
        int e = 0;
        while (fmod(den, Int(p)) == 0) { den /= p; pe *= p; ++e; }
        d1 = den;
        if (fmod(Int(p - 1), d1) != 0)
            throw RingMismatch("character order incompatible with the coefficient ring");
        if (e > level_exp)
            throw CyclotomicLevelTooSmall("character needs a deeper cyclotomic level");
        // num/(d1 p^e) = num*v/d1 + num*u/p^e mod 1, where u d1 + v p^e = 1
        Int u, v;
        egcd(d1, pe, u, v);
        PVec out = one();
        if (d1 > 1) {
            Int a1 = fmod(num * v, d1);
            uint64_t zeta1 = teichmuller(spow_u((uint64_t)(unsigned long long)Int(primitive_root(Int(p))),
                                                (uint64_t)(unsigned long long)Int((Int(p) - 1) / d1)));
            out = scale(out, spow_u(zeta1, (uint64_t)(unsigned long long)a1));
        }
        if (e > 0) {
            Int a2 = fmod(num * u, pe);
            long shift = pn / (long)(unsigned long long)pe;
            out = mul(out, root(shift * (long)(unsigned long long)a2));
        }
        return out;
    }
};

using PRingPtr = std::shared_ptr<const PCoeffRing>;

inline PRingPtr make_pring(long p, int precision, int level_exp) {
    return std::make_shared<PCoeffRing>(p, precision, level_exp);
}

// ---------------------------------------------------------------------------
// Measures on Z_p as truncated power series Phi(t) = sum c_n T^n, T = t - 1,
// with c_n the n-th binomial moment.  truncation D means the series is the
// exact polynomial of a finite q-expansion (the only case the tests use), or
// a degree-D jet otherwise.  valid_digits tracks how many p-adic digits of
// every coefficient are trustworthy after exact divisions.
// ---------------------------------------------------------------------------

struct MeasureSeries {
    PRingPtr ring;
    std::vector<PVec> coeffs; // index 0..truncation
    long truncation = 0;
    int valid_digits = 0;

    static MeasureSeries zeros(PRingPtr R, long D) {
        MeasureSeries mu;
        mu.valid_digits = R->precision;
        mu.coeffs.assign(D + 1, R->zero());
        mu.truncation = D;
        mu.ring = std::move(R);
        return mu;
    }
    // Dirac measure at j: Phi = t^j = sum_n binom(j, n) T^n
    static MeasureSeries dirac(PRingPtr R, long j, long D) {
        MeasureSeries mu = zeros(R, D);
        Int c = 1;
        for (long n = 0; n <= std::min(j, D); ++n) {
            mu.coeffs[n] = mu.ring->from_int(c);
            c = c * (j - n) / (n + 1);
        }
        return mu;
    }
};

// locally constant function on Z_p factoring through Z/p^n
struct LocallyConstantFn {
    int level_exp = 0;
    std::vector<PVec> values; // indexed by residue 0..p^n-1

    static LocallyConstantFn constant_one(const PCoeffRing& R, int n) {
        LocallyConstantFn f;
        f.level_exp = n;
        long pn = 1;
        for (int i = 0; i < n; ++i) pn *= R.p;
        f.values.assign(pn, R.one());
        return f;
    }
    static LocallyConstantFn indicator(const PCoeffRing& R, int n, long b0) {
        LocallyConstantFn f;
        f.level_exp = n;
        long pn = 1;
        for (int i = 0; i < n; ++i) pn *= R.p;
        f.values.assign(pn, R.zero());
        f.values[((b0 % pn) + pn) % pn] = R.one();
        return f;
    }
    static LocallyConstantFn unit_indicator(const PCoeffRing& R, int n) {
        LocallyConstantFn f = constant_one(R, n);
        for (long b = 0; b < (long)f.values.size(); ++b)
            if (b % R.p == 0) f.values[b] = R.zero();
        return f;
    }
    // p-adic avatar of a residue character given by turns (order divides
    // (p-1) p^{n-1} on units; zero allowed off units)
    static LocallyConstantFn from_turns(const PCoeffRing& R, int n, const std::vector<Turn>& t) {
        LocallyConstantFn f;
        f.level_exp = n;
        f.values.reserve(t.size());
        for (const Turn& x : t) f.values.push_back(R.embed_turn(x));
        return f;
    }
    LocallyConstantFn pointwise_mul(const PCoeffRing& R, const LocallyConstantFn& o) const {
        if (level_exp != o.level_exp)
            throw BoundExceeded("pointwise product needs a common level");
        LocallyConstantFn f;
        f.level_exp = level_exp;
        f.values.resize(values.size());
        for (size_t i = 0; i < values.size(); ++i) f.values[i] = R.mul(values[i], o.values[i]);
        return f;
    }
};

// Orientation of the averaging operator: `plain` weights by zeta^{-b}
// (so that on q-models act(phi, Phi_f) twists by phi itself); `geometric`
// weights by zeta^{+b} (the sign carried by the modular-curve shift action,
// so the q-model identity reads act(phi, Phi_f) = Phi of twist by
// phi(-1)-composed phi).  Tests pin both.
enum class Orientation { plain, geometric };

// ---------------------------------------------------------------------------
// Moments: both the operator route ((t d/dt)^m then T = 0) and the Stirling
// expansion sum_n c_n S(m, n) n! are computed and compared on every call.
// ---------------------------------------------------------------------------

inline PVec moment(const MeasureSeries& mu, long m) {
    const PCoeffRing& R = *mu.ring;
    if (mu.valid_digits < 1) throw PrecisionExhausted("moment: no valid digits remain");
    if (m < 0 || m > mu.truncation)
        throw BoundExceeded("moment: order exceeds the series truncation");
    long D = mu.truncation;
    // route 1: apply t d/dt = (1+T) d/dT m times; after step s only
    // coefficients 0..D-s remain meaningful, which is fine since m <= D
    std::vector<PVec> d = mu.coeffs;
    for (long s = 0; s < m; ++s) {
        std::vector<PVec> e(D + 1, R.zero());
        for (long n = 0; n < D; ++n) e[n] = R.scale(d[n + 1], (uint64_t)(n + 1) % R.pM);
        for (long n = D; n >= 1; --n) e[n] = R.add(e[n], e[n - 1]);
        d = std::move(e);
    }
    PVec route1 = d[0];
    // route 2: sum_n c_n S(m, n) n! with Stirling numbers of the second kind
    std::vector<uint64_t> S(m + 1, 0); // S(m_cur, n) rolling row
    S[0] = 1 % R.pM;                   // S(0,0) = 1
    for (long mc = 1; mc <= m; ++mc) {
        for (long n = std::min(mc, m); n >= 1; --n)
            S[n] = R.sadd(R.smul((uint64_t)n, S[n]), S[n - 1]);
        S[0] = 0; // S(mc, 0) = 0 for mc >= 1
    }
    PVec route2 = R.zero();
    uint64_t fact = 1 % R.pM;
    for (long n = 0; n <= std::min(m, D); ++n) {
        if (n > 0) fact = R.smul(fact, (uint64_t)n);
        route2 = R.add(route2, R.scale(mu.coeffs[n], R.smul(S[n], fact)));
    }
    if (!R.eq_mod(route1, route2, mu.valid_digits))
        throw InternalMismatch("moment: operator and Stirling routes disagree");
    return route1;
}

// ---------------------------------------------------------------------------
// The averaging operator [phi].  The substitution table Phi(zeta^j t) is
// phi-independent and reusable across many phi of the same level.
// ---------------------------------------------------------------------------

struct ActPlan {
    PRingPtr ring;
    int level_exp = 0;
    long pn = 1;
    long stride = 1; // zeta_{p^n} = (ring root)^stride
    long truncation = 0;
    int valid_digits = 0;
    std::vector<std::vector<PVec>> subst; // [j][k]: coefficients of Phi(zeta^j t)
};

inline ActPlan make_act_plan(const MeasureSeries& mu, int n) {
    const PCoeffRing& R = *mu.ring;
    if (n > R.level_exp)
        throw CyclotomicLevelTooSmall("act: ring lacks the required roots of unity");
    ActPlan plan;
    plan.ring = mu.ring;
    plan.level_exp = n;
    plan.pn = 1;
    for (int i = 0; i < n; ++i) plan.pn *= R.p;
    plan.stride = R.level_exp == 0 ? 1 : R.pn / plan.pn;
    plan.truncation = mu.truncation;
    plan.valid_digits = mu.valid_digits;
    long D = mu.truncation;
    plan.subst.resize(plan.pn);
    for (long j = 0; j < plan.pn; ++j) {
        // T' = (zeta^j - 1) + zeta^j T; Horner from the top coefficient
        PVec zj = R.root(plan.stride * j);
        PVec a0 = R.sub(zj, R.one());
        std::vector<PVec> res(1, mu.coeffs[D]);
        for (long k = D - 1; k >= 0; --k) {
            std::vector<PVec> nxt(std::min((long)res.size() + 1, D + 1), R.zero());
            for (long i = 0; i < (long)res.size(); ++i) {
                nxt[i] = R.add(nxt[i], R.mul(res[i], a0));
                if (i + 1 <= D) nxt[i + 1] = R.add(nxt[i + 1], R.mul(res[i], zj));
            }
            nxt[0] = R.add(nxt[0], mu.coeffs[k]);
            res = std::move(nxt);
        }
        res.resize(D + 1, R.zero());
        plan.subst[j] = std::move(res);
    }
    return plan;
}

namespace detail {
// weights w_j = sum_b phi(b) zeta^{-jb} (plain) or zeta^{+jb} (geometric)
inline std::vector<PVec> act_weights(const ActPlan& plan, const LocallyConstantFn& phi,
                                     Orientation o) {
    const PCoeffRing& R = *plan.ring;
    if (phi.level_exp != plan.level_exp)
        throw BoundExceeded("act: plan level and function level differ");
    std::vector<PVec> w(plan.pn, R.zero());
    for (long j = 0; j < plan.pn; ++j)
        for (long b = 0; b < plan.pn; ++b) {
            long e = (o == Orientation::plain ? -j * b : j * b) % plan.pn;
            w[j] = R.add(w[j], R.mul(phi.values[b], R.root(plan.stride * e)));
        }
    return w;
}
} // namespace detail

inline MeasureSeries act(const ActPlan& plan, const LocallyConstantFn& phi,
                         Orientation o = Orientation::plain) {
    const PCoeffRing& R = *plan.ring;
    std::vector<PVec> w = detail::act_weights(plan, phi, o);
    MeasureSeries out = MeasureSeries::zeros(plan.ring, plan.truncation);
    for (long j = 0; j < plan.pn; ++j)
        for (long k = 0; k <= plan.truncation; ++k)
            out.coeffs[k] = R.add(out.coeffs[k], R.mul(w[j], plan.subst[j][k]));
    for (long k = 0; k <= plan.truncation; ++k)
        out.coeffs[k] = R.divide_exact(out.coeffs[k], plan.level_exp);
    out.valid_digits = plan.valid_digits - plan.level_exp;
    if (out.valid_digits < 1) throw PrecisionExhausted("act: precision budget exhausted");
    return out;
}

inline MeasureSeries act(const LocallyConstantFn& phi, const MeasureSeries& mu,
                         Orientation o = Orientation::plain) {
    return act(make_act_plan(mu, phi.level_exp), phi, o);
}

// twisted moment: computed as moment(act(phi, mu), m) and, independently,
// by differentiating the undivided average and dividing the single scalar at
// the end; the two placements of the exact division must agree.
inline PVec twisted_moment(const MeasureSeries& mu, const LocallyConstantFn& phi, long m,
                           Orientation o = Orientation::plain) {
    const PCoeffRing& R = *mu.ring;
    ActPlan plan = make_act_plan(mu, phi.level_exp);
    MeasureSeries averaged = act(plan, phi, o);
    PVec route1 = moment(averaged, m);
    // undivided route
    std::vector<PVec> w = detail::act_weights(plan, phi, o);
    long D = plan.truncation;
    MeasureSeries raw = MeasureSeries::zeros(mu.ring, D);
    for (long j = 0; j < plan.pn; ++j)
        for (long k = 0; k <= D; ++k)
            raw.coeffs[k] = R.add(raw.coeffs[k], R.mul(w[j], plan.subst[j][k]));
    raw.valid_digits = mu.valid_digits;
    PVec route2 = R.divide_exact(moment(raw, m), plan.level_exp);
    if (!R.eq_mod(route1, route2, averaged.valid_digits))
        throw InternalMismatch("twisted moment: division placements disagree");
    return route1;
}

// ---------------------------------------------------------------------------
// Unit-support restriction, Frobenius substitution, Verschiebung evaluation.
// ---------------------------------------------------------------------------

inline MeasureSeries restrict_to_units(const MeasureSeries& mu) {
    const PCoeffRing& R = *mu.ring;
    return act(LocallyConstantFn::unit_indicator(R, 1), mu);
}

inline bool is_unit_supported(const MeasureSeries& mu) {
    MeasureSeries r = restrict_to_units(mu);
    for (long k = 0; k <= mu.truncation; ++k)
        if (!mu.ring->eq_mod(r.coeffs[k], mu.coeffs[k], r.valid_digits)) return false;
    return true;
}

// Phi(t) -> Phi(t^{p^n}): the coordinate law moving a point by the n-th
// Frobenius; exact, so the result keeps the full expanded degree.
inline MeasureSeries frobenius_substitute(const MeasureSeries& mu, int n) {
    const PCoeffRing& R = *mu.ring;
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= R.p;
    long D = mu.truncation;
    // T' = (1+T)^{p^n} - 1
    std::vector<PVec> tp(pn + 1, R.zero());
    {
        Int c = 1;
        for (long i = 0; i <= pn; ++i) {
            tp[i] = R.from_int(c);
            c = c * (pn - i) / (i + 1);
        }
        tp[0] = R.zero(); // subtract 1
    }
    std::vector<PVec> res(1, mu.coeffs[D]);
    for (long k = D - 1; k >= 0; --k) {
        std::vector<PVec> nxt(res.size() + pn, R.zero());
        for (long i = 0; i < (long)res.size(); ++i) {
            if (R.is_zero_mod(res[i], R.precision)) continue;
            for (long s = 0; s <= pn; ++s)
                if (!R.is_zero_mod(tp[s], R.precision))
                    nxt[i + s] = R.add(nxt[i + s], R.mul(res[i], tp[s]));
        }
        nxt[0] = R.add(nxt[0], mu.coeffs[k]);
        res = std::move(nxt);
    }
    MeasureSeries out;
    out.ring = mu.ring;
    out.truncation = (long)res.size() - 1;
    out.coeffs = std::move(res);
    out.valid_digits = mu.valid_digits;
    return out;
}

// Phi evaluated at t = zeta_{p^n}^u (the Verschiebung quotient point).
inline PVec verschiebung_root_evaluate(const MeasureSeries& mu, long u, int n) {
    const PCoeffRing& R = *mu.ring;
    if (n > R.level_exp)
        throw CyclotomicLevelTooSmall("verschiebung evaluation needs level p^n roots");
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= R.p;
    long stride = R.level_exp == 0 ? 1 : R.pn / pn;
    PVec x = R.sub(R.root(stride * (((u % pn) + pn) % pn)), R.one()); // T value
    PVec res = mu.coeffs[mu.truncation];
    for (long k = mu.truncation - 1; k >= 0; --k) res = R.add(R.mul(res, x), mu.coeffs[k]);
    return res;
}

// ---------------------------------------------------------------------------
// The q-model: Phi_f(t) = sum_j a(j) t^j re-expanded around t = 1.  Exact
// for finite q-polynomials; the vehicle for all coordinate-law tests.
// ---------------------------------------------------------------------------

inline MeasureSeries q_model_measure(const SeriesQ<Rat>& f, PRingPtr ring) {
    const PCoeffRing& R = *ring;
    long D = f.truncation;
    MeasureSeries mu = MeasureSeries::zeros(std::move(ring), D);
    // c_n = sum_j a(j) binom(j, n), built from Pascal rows mod p^M
    std::vector<uint64_t> row(D + 1, 0);
    row[0] = 1 % R.pM;
    for (long j = 1; j <= D; ++j) {
        for (long n = j; n >= 1; --n) row[n] = R.sadd(row[n], row[n - 1]);
        if (f.coeffs[j] == 0) continue;
        PVec aj = R.from_rat(f.coeffs[j]);
        for (long n = 0; n <= j; ++n)
            if (row[n]) mu.coeffs[n] = R.add(mu.coeffs[n], R.scale(aj, row[n]));
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Assembled cuspidal measure: one unit-supported component per coset
// representative, scaled by the character value at the inverse
// representative.  Components here are q-model instances.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<long, MeasureSeries>> assemble_cuspidal_measure(
    const SeriesQ<Rat>& f_depleted, const std::function<PVec(long)>& lambda_hat_at_inverse,
    const std::vector<long>& class_tags, PRingPtr ring) {
    MeasureSeries base = q_model_measure(f_depleted, ring);
    if (!is_unit_supported(base))
        throw NotDepleted("assemble_cuspidal_measure: component is not unit-supported");
    const PCoeffRing& R = *ring;
    std::vector<std::pair<long, MeasureSeries>> out;
    out.reserve(class_tags.size());
    for (long tag : class_tags) {
        PVec s = lambda_hat_at_inverse(tag);
        MeasureSeries mu = base;
        for (long k = 0; k <= mu.truncation; ++k) mu.coeffs[k] = R.mul(base.coeffs[k], s);
        out.emplace_back(tag, std::move(mu));
    }
    return out;
}

} // namespace anticyc
