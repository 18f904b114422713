#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anticyc/numbers.hpp"
#include "anticyc/qexp.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

// ---------------------------------------------------------------------------
// Nearly-holomorphic expansions: F(z) = sum_{r=0}^{depth} g_r(q) (z-zbar)^{-r}
// with complex q-series components.  The weight-raising operator
//   (1/2 pi i)(d/dz + w/(z - zbar))
// acts on this representation by the exact recurrence
//   g'_r = theta g_r + ((w - r + 1)/(2 pi i)) g_{r-1},   theta = q d/dq,
// validated against finite differences rather than any transcribed closed
// form for the iterated operator.
// ---------------------------------------------------------------------------

struct NearlyHoloExpansion {
    int base_weight = 0; // k: the weight of the depth-0 series
    int depth = 0;       // m: number of operator applications
    std::vector<SeriesQ<Cplx>> components;
    long truncation = 0;

    int total_weight() const { return base_weight + 2 * depth; }

    static NearlyHoloExpansion from_series(SeriesQ<Cplx> f) {
        NearlyHoloExpansion e;
        e.base_weight = f.weight;
        e.truncation = f.truncation;
        e.components.push_back(std::move(f));
        return e;
    }
};

inline NearlyHoloExpansion maass_shimura(const NearlyHoloExpansion& e) {
    int w = e.total_weight();
    Cplx inv2pii = Cplx{Real(1), Real(0)} / i_times(Cplx{Real(2) * pi_value(), Real(0)});
    NearlyHoloExpansion out;
    out.base_weight = e.base_weight;
    out.depth = e.depth + 1;
    out.truncation = e.truncation;
    out.components.reserve(out.depth + 1);
    for (int r = 0; r <= out.depth; ++r) {
        SeriesQ<Cplx> g = SeriesQ<Cplx>::zeros(e.base_weight, Int(1), e.truncation);
        if (r <= e.depth) // theta g_r
            for (long n = 1; n <= e.truncation; ++n)
                g.coeffs[n] = e.components[r].coeffs[n] * Cplx{Real(n), Real(0)};
        if (r >= 1) { // ((w - r + 1)/(2 pi i)) g_{r-1}
            Cplx c = inv2pii * Cplx{Real(w - r + 1), Real(0)};
            for (long n = 1; n <= e.truncation; ++n)
                g.coeffs[n] = g.coeffs[n] + c * e.components[r - 1].coeffs[n];
        }
        out.components.push_back(std::move(g));
    }
    return out;
}

inline NearlyHoloExpansion maass_shimura_power(const SeriesQ<Cplx>& f, int m) {
    NearlyHoloExpansion e = NearlyHoloExpansion::from_series(f);
    for (int i = 0; i < m; ++i) e = maass_shimura(e);
    return e;
}

// Evaluate with independent z and zbar (the components are literal functions
// of q(z) and the lowering variable z - zbar, which the finite-difference
// oracle needs to vary separately).
inline Cplx evaluate_at(const NearlyHoloExpansion& e, const Cplx& z, const Cplx& zbar) {
    Cplx q = exp(i_times(z) * Cplx{Real(2) * pi_value(), Real(0)});
    Cplx inv_span = Cplx{Real(1), Real(0)} / (z - zbar);
    Cplx total{};
    Cplx span_pow{Real(1), Real(0)};
    for (int r = 0; r <= e.depth; ++r) {
        Cplx s{};
        Cplx qn{Real(1), Real(0)};
        for (long n = 1; n <= e.truncation; ++n) {
            qn *= q;
            s = s + e.components[r].coeffs[n] * qn;
        }
        total = total + s * span_pow;
        span_pow *= inv_span;
    }
    return total;
}

inline Cplx evaluate_at(const NearlyHoloExpansion& e, const Cplx& z) {
    return evaluate_at(e, z, conj(z));
}

// Heuristic tail bound: |a_n| <= n^{(k+1)/2} for the depth-0 cusp form
// (divisor-count times the Deligne bound), and each operator application
// multiplies coefficients by at most n times a bounded constant, so the
// depth-m components obey |coef| <= C n^{(k+1)/2 + m} with C from the
// recurrence constants.  Not rigorous; documented as such.
inline Real evaluation_tail_bound(const NearlyHoloExpansion& e, const Real& abs_q,
                                  const Real& abs_inv_span) {
    Real expo = Real(e.base_weight + 1) / 2 + Real(e.depth);
    Real C = Real(1);
    for (int j = 0; j < e.depth; ++j) C *= Real(e.total_weight()) / (2 * pi_value()) + 1;
    long D = e.truncation;
    // sum_{n>D} n^expo |q|^n <= |q|^{D+1}(D+1)^expo / (1 - |q| e^{expo/(D+1)})
    Real growth = exp(expo / Real(D + 1));
    Real denom = 1 - abs_q * growth;
    if (denom <= 0) return Real("1e300");
    Real head = pow(abs_q, Real(D + 1)) * pow(Real(D + 1), expo) / denom;
    Real span_geom = abs_inv_span <= 1 ? Real(1) : pow(abs_inv_span, Real(e.depth));
    return C * head * (e.depth + 1) * span_geom;
}

// ---------------------------------------------------------------------------
// CM evaluation: the lattice-homogeneous value omega2^{-(k+2m)} F(tau) on the
// Gauss-reduced basis of a proper ideal.  Homogeneous of degree -(k+2m) in
// the lattice; invariant under basis change (even total weight throughout).
// ---------------------------------------------------------------------------

struct CMEvaluation {
    Lattice ideal;
    Cplx tau;
    Cplx omega2;
    Cplx value;
    Real tail_bound;
};

// A proper ideal together with the oriented basis to evaluate on.  The
// default is the Gauss-reduced basis (best convergence); sums that need a
// level structure supply their own adapted bases instead.
struct LatticeWithBasis {
    Lattice ideal;
    QuadElem w1, w2; // evaluate at tau = w1/w2, homogenize by w2
};

inline CMEvaluation evaluate_on_basis(const NearlyHoloExpansion& e, const Lattice& a,
                                      QuadElem w1q, const QuadElem& w2q) {
    Cplx w2 = embed_quad(w2q);
    Cplx tau = embed_quad(w1q) / w2;
    if (tau.im < 0) {
        // flip to the upper half plane; harmless since every expansion we
        // evaluate has even total weight
        w1q = -w1q;
        tau = -tau;
    }
    CMEvaluation ev;
    ev.ideal = a;
    ev.tau = tau;
    ev.omega2 = w2;
    Cplx raw = evaluate_at(e, tau);
    ev.value = raw * ipow(w2, -(long)e.total_weight());
    Real abs_q = exp(Real(-2) * pi_value() * tau.im);
    Real inv_span = Real(1) / (2 * tau.im);
    ev.tail_bound = evaluation_tail_bound(e, abs_q, inv_span) * abs(ipow(w2, -(long)e.total_weight()));
    return ev;
}

inline LatticeWithBasis gauss_basis_of(const Lattice& a) {
    auto [v, u] = gauss_reduced_basis(a); // v shortest: the homogenizing vector
    return {a, u, v};
}

inline CMEvaluation evaluate_on_lattice(const NearlyHoloExpansion& e, const Lattice& a) {
    LatticeWithBasis b = gauss_basis_of(a);
    return evaluate_on_basis(e, b.ideal, b.w1, b.w2);
}

inline Cplx lattice_value(const SeriesQ<Cplx>& f, int m, const Lattice& a) {
    CMEvaluation ev = evaluate_on_lattice(maass_shimura_power(f, m), a);
    if (ev.tail_bound > Real("1e-5") * abs(ev.value))
        throw PrecisionLoss("lattice_value: q-series truncation dominates the value");
    return ev.value;
}

// ---------------------------------------------------------------------------
// Toric period sums over a complete set of proper-ideal class
// representatives:  sum_j chi(a_j^{-1}) N(a_j)^m (value of the depth-m
// expansion on a_j).  The character callable must carry infinity type
// k + 2m at principal ideals (chi((b) a) = chi_f(b) b^{-(k+m)} bbar^m
// chi(a)) for the summands to be representative-independent; the callable is
// supplied by the character-assembly layer.
// ---------------------------------------------------------------------------

inline Cplx period_sum_on_bases(const SeriesQ<Cplx>& f, int m,
                                const std::function<Cplx(const Lattice&)>& chi_at_inverse,
                                const std::vector<LatticeWithBasis>& reps,
                                const RingClassGroup& group) {
    std::set<long> seen;
    for (const auto& r : reps) seen.insert(group.class_of(r.ideal));
    if ((long)seen.size() != group.size() || (long)reps.size() != group.size())
        throw IncompleteRepresentatives(
            "period sum: representatives cover " + std::to_string(seen.size()) + " of " +
            std::to_string(group.size()) + " classes");
    NearlyHoloExpansion e = maass_shimura_power(f, m);
    Cplx s{};
    for (const auto& r : reps) {
        CMEvaluation ev = evaluate_on_basis(e, r.ideal, r.w1, r.w2);
        if (ev.tail_bound > Real("1e-5") * abs(ev.value))
            throw PrecisionLoss("period sum: truncation too small at a CM point");
        Real nm = pow(to_real(r.ideal.norm_in_multiplier_ring()), Real(m));
        s = s + chi_at_inverse(r.ideal) * Cplx{nm, Real(0)} * ev.value;
    }
    return s;
}

inline Cplx period_sum(const SeriesQ<Cplx>& f, int m,
                       const std::function<Cplx(const Lattice&)>& chi_at_inverse,
                       const std::vector<Lattice>& reps, const RingClassGroup& group) {
    std::vector<LatticeWithBasis> bs;
    bs.reserve(reps.size());
    for (const auto& a : reps) bs.push_back(gauss_basis_of(a));
    return period_sum_on_bases(f, m, chi_at_inverse, bs, group);
}

// ---------------------------------------------------------------------------
// The depletion Euler identity: the period sum of the p-depleted form equals
//   (1 - a(p, f) chi(pbar) + psi(p) p^{k-1} chi(pbar)^2)
// times the period sum of f.  Both sides are computed as honest period sums
// of q-expansions; the report carries the relative error.
// ---------------------------------------------------------------------------

struct EulerCheckReport {
    Cplx lhs;          // period sum of the depleted form
    Cplx rhs;          // Euler factor times the period sum of f
    Cplx euler_factor; // 1 - a_p chi(pbar) + psi(p) p^{k-1} chi(pbar)^2
    Real rel_err;
};

inline EulerCheckReport euler_depletion_check(
    const SeriesQ<Cplx>& f, int m, const std::function<Cplx(const Lattice&)>& chi_at_inverse,
    const std::vector<LatticeWithBasis>& reps, const RingClassGroup& group, long p,
    const Cplx& chi_pbar, const Cplx& psi_p, const Cplx& a_p) {
    Real pk1 = pow(Real(p), Real(f.weight - 1));
    EulerCheckReport rep;
    rep.euler_factor = Cplx{Real(1), Real(0)} - a_p * chi_pbar +
                       psi_p * Cplx{pk1, Real(0)} * chi_pbar * chi_pbar;
    rep.lhs = period_sum_on_bases(p_deplete(f, p), m, chi_at_inverse, reps, group);
    rep.rhs = rep.euler_factor * period_sum_on_bases(f, m, chi_at_inverse, reps, group);
    Real denom = abs(rep.rhs);
    if (denom < Real("1e-200")) denom = Real("1e-200");
    rep.rel_err = abs(rep.lhs - rep.rhs) / denom;
    return rep;
}

} // namespace anticyc
