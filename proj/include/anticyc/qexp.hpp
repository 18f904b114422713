#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "anticyc/cycrat.hpp"
#include "anticyc/heckechar.hpp"

namespace anticyc {

// ---------------------------------------------------------------------------
// Coefficient rings for q-expansions.  The exact rings are Rat (integral
// eigenforms) and CycRat (twists, stabilizations, theta series); Cplx is the
// numeric embedding used by the analytic estimates.
// ---------------------------------------------------------------------------

template <class T> struct CoeffOps;

template <> struct CoeffOps<Rat> {
    static Rat from_rat(const Rat& r) { return r; }
    static Rat from_turn(const Turn& t) {
        if (t.is_zero()) return Rat(0);
        if (t.is_one()) return Rat(1);
        if (t.den == 2) return Rat(-1);
        throw RingMismatch("rational coefficients cannot hold this character value");
    }
    static bool equal(const Rat& a, const Rat& b) { return a == b; }
    static Cplx complex(const Rat& r) { return Cplx{to_real(r), Real(0)}; }
};

template <> struct CoeffOps<CycRat> {
    static CycRat from_rat(const Rat& r) { return CycRat(r); }
    static CycRat from_turn(const Turn& t) { return CycRat::from_turn(t); }
    static bool equal(const CycRat& a, const CycRat& b) { return a == b; }
    static Cplx complex(const CycRat& c) { return c.to_complex(); }
};

template <> struct CoeffOps<Cplx> {
    static Cplx from_rat(const Rat& r) { return Cplx{to_real(r), Real(0)}; }
    static Cplx from_turn(const Turn& t) { return t.to_complex(); }
    static bool equal(const Cplx& a, const Cplx& b) { return a == b; }
    static Cplx complex(const Cplx& c) { return c; }
};

// ---------------------------------------------------------------------------
// Truncated q-expansions a(1..D) with weight / level / nebentypus metadata.
// ---------------------------------------------------------------------------

template <class T>
struct SeriesQ {
    int weight = 0;
    Int level = 1;
    DirichletCharacter nebentypus; // trivial by default
    std::vector<T> coeffs;         // index n in 1..truncation; [0] unused
    long truncation = 0;

    static SeriesQ zeros(int k, Int N, long D) {
        SeriesQ f;
        f.weight = k;
        f.level = std::move(N);
        f.truncation = D;
        f.coeffs.assign(D + 1, T());
        return f;
    }
    const T& a(long n) const {
        if (n < 1 || n > truncation)
            throw BoundExceeded("q-expansion coefficient " + std::to_string(n) +
                                " beyond truncation " + std::to_string(truncation));
        return coeffs[n];
    }
};

template <class T>
SeriesQ<Cplx> embed_complex(const SeriesQ<T>& f) {
    SeriesQ<Cplx> g = SeriesQ<Cplx>::zeros(f.weight, f.level, f.truncation);
    g.nebentypus = f.nebentypus;
    for (long n = 1; n <= f.truncation; ++n) g.coeffs[n] = CoeffOps<T>::complex(f.coeffs[n]);
    return g;
}

// ---------------------------------------------------------------------------
// Hecke operators U_p, V_p, T_p = U_p + psi(p) p^{k-1} V_p.
// ---------------------------------------------------------------------------

template <class T>
SeriesQ<T> hecke_U(const SeriesQ<T>& f, long p) {
    SeriesQ<T> g = SeriesQ<T>::zeros(
        f.weight, fmod(f.level, Int(p)) == 0 ? f.level : f.level * p, f.truncation / p);
    g.nebentypus = f.nebentypus;
    for (long n = 1; n <= g.truncation; ++n) g.coeffs[n] = f.coeffs[n * p];
    return g;
}

template <class T>
SeriesQ<T> hecke_V(const SeriesQ<T>& f, long p) {
    SeriesQ<T> g = SeriesQ<T>::zeros(f.weight, f.level * p, (f.truncation + 1) * p - 1);
    g.nebentypus = f.nebentypus;
    for (long n = 1; n <= f.truncation; ++n) g.coeffs[n * p] = f.coeffs[n];
    return g;
}

template <class T>
SeriesQ<T> hecke_T(const SeriesQ<T>& f, long p) {
    SeriesQ<T> g = hecke_U(f, p);
    g.level = f.level;
    Turn psi = f.nebentypus.value(Int(p));
    // Bad prime (the nebentypus is stored at its conductor, so also treat
    // p | level as bad): T_p = U_p.
    if (psi.is_zero() || fmod(f.level, Int(p)) == 0) return g;
    T c = CoeffOps<T>::from_turn(psi) * CoeffOps<T>::from_rat(Rat(ipow(Int(p), f.weight - 1)));
    for (long n = 1; n <= g.truncation; ++n)
        if (n % p == 0) g.coeffs[n] = g.coeffs[n] + c * f.coeffs[n / p];
    return g;
}

// ---------------------------------------------------------------------------
// p-depletion: drop the coefficients at multiples of p.  The two defining
// formulas — the unit-indicator twist and 1 - V_p U_p — are evaluated and
// compared on every call.
// ---------------------------------------------------------------------------

template <class T>
SeriesQ<T> p_deplete(const SeriesQ<T>& f, long p) {
    SeriesQ<T> g = f;
    g.level = f.level * p * p;
    g.nebentypus = f.nebentypus;
    for (long n = p; n <= g.truncation; n += p) g.coeffs[n] = T();
    SeriesQ<T> vu = hecke_V(hecke_U(f, p), p);
    for (long n = 1; n <= f.truncation; ++n) {
        T alt = f.coeffs[n] - vu.coeffs[n];
        if (!CoeffOps<T>::equal(g.coeffs[n], alt))
            throw InternalMismatch("p-depletion formulas disagree at index " +
                                   std::to_string(n));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Twist by a Dirichlet character: a(n) -> phi(n) a(n).  Level and nebentypus
// of the result are declared metadata (N q^2, psi phi^2), not verified.
// ---------------------------------------------------------------------------

template <class T>
SeriesQ<T> twist(const SeriesQ<T>& f, const DirichletCharacter& phi) {
    SeriesQ<T> g = f;
    g.level = f.level * phi.modulus() * phi.modulus();
    g.nebentypus = f.nebentypus * (phi * phi);
    for (long n = 1; n <= g.truncation; ++n)
        g.coeffs[n] = f.coeffs[n] * CoeffOps<T>::from_turn(phi.value(Int(n)));
    return g;
}

// ---------------------------------------------------------------------------
// Eigenforms: validated coefficient data with Satake parameters and
// stabilization.
// ---------------------------------------------------------------------------

template <class T>
struct EigenformT {
    SeriesQ<T> base;
    Int newform_level = 1; // N0

    const T& a(long n) const { return base.a(n); }
};
using Eigenform = EigenformT<Rat>;

namespace detail {
inline Rat coeff_as_rational(const Rat& r) { return r; }
inline Rat coeff_as_rational(const CycRat& c) {
    auto r = c.as_rational();
    if (!r) throw RingMismatch("Satake parameter needs a rational coefficient");
    return *r;
}
} // namespace detail

// Classical Satake roots at l: the roots of X^2 - a_l X + psi(l) l^{k-1},
// with the declared choice alpha = (a_l + sqrt(disc))/2, sqrt embedded with
// positive imaginary part (disc < 0 in the cuspidal range).  The unitary
// normalization divides these by l^{(k-1)/2}.  At l | N0 the pair is
// (a_l, 0).
template <class T>
std::pair<CycRat, CycRat> satake(const EigenformT<T>& f, long l) {
    Rat al = detail::coeff_as_rational(f.base.a(l));
    if (fmod(f.newform_level, Int(l)) == 0)
        return {CycRat(al), CycRat(Rat(0))};
    Turn psi = f.base.nebentypus.value(Int(l));
    Rat eps = CoeffOps<Rat>::from_turn(psi);
    Rat disc_rat = al * al - Rat(4) * eps * Rat(ipow(Int(l), f.base.weight - 1));
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(disc_rat) != 1)
        throw NonIntegralResult("satake: discriminant is not an integer");
    CycRat sq = CycRat::sqrt_of(numerator(disc_rat));
    CycRat alpha = (CycRat(al) + sq) * Rat(1, 2);
    CycRat beta = (CycRat(al) - sq) * Rat(1, 2);
    return {alpha, beta};
}

// Stabilization at the primes in S (all coprime to N0): coefficients are
// rebuilt multiplicatively with a(l^r) = alpha_l^r at l in S, where alpha_l
// is the declared classical Satake root, and the eigenform data elsewhere.
// Primes listed in require_nonzero_split must have a(l) != 0.
inline EigenformT<CycRat> stabilize(const Eigenform& f0, const std::vector<long>& S,
                                    long D, const std::set<long>& require_nonzero_split = {}) {
    for (long l : require_nonzero_split)
        if (f0.base.a(l) == 0)
            throw VanishingSplitCoefficient(
                "stabilize: a(" + std::to_string(l) + ") vanishes at a split prime");
    if (D > f0.base.truncation)
        throw BoundExceeded("stabilize: requested truncation beyond the eigenform data");
    std::map<long, CycRat> alpha;
    Int level = f0.newform_level;
    for (long l : S) {
        if (fmod(f0.newform_level, Int(l)) == 0)
            throw std::invalid_argument("stabilize: prime divides the newform level");
        if (!alpha.count(l)) {
            alpha.emplace(l, satake(f0, l).first);
            level *= l;
        }
    }
    EigenformT<CycRat> g;
    g.newform_level = f0.newform_level;
    g.base = SeriesQ<CycRat>::zeros(f0.base.weight, level, D);
    g.base.nebentypus = f0.base.nebentypus;
    for (long n = 1; n <= D; ++n) {
        CycRat v(Rat(1));
        for (auto& [p, e] : factorize(Int(n))) {
            long pl = (long)p;
            auto it = alpha.find(pl);
            if (it != alpha.end())
                v *= it->second.pow(e);
            else
                v *= CycRat(f0.base.a((long)ipow(p, e)));
        }
        g.base.coeffs[n] = v;
    }
    return g;
}

// ---------------------------------------------------------------------------
// CM theta series over a class number 1 imaginary quadratic field:
//   theta(chi) = sum over integral ideals coprime to the conductor of
//                chi(ideal) q^{norm},   weight kappa + 1.
// ---------------------------------------------------------------------------

inline SeriesQ<CycRat> theta_series(
    const Int& d, int kappa,
    const std::function<std::optional<CycRat>(const Lattice&)>& chi_value, long D,
    const Int& declared_level, const DirichletCharacter& neb) {
    require_fundamental(d);
    if (maximal_order_class_number(d) != 1)
        throw ClassNumberUnsupported("theta_series: class number > 1 not supported");
    SeriesQ<CycRat> g = SeriesQ<CycRat>::zeros(kappa + 1, declared_level, D);
    g.nebentypus = neb;
    using boost::multiprecision::numerator;
    for (auto& I : principal_ideals_by_norm(d, D)) {
        auto v = chi_value(I);
        if (!v) continue;
        long n = (long)numerator(I.index_in_maximal_order());
        g.coeffs[n] += *v;
    }
    return g;
}

inline SeriesQ<CycRat> theta_series(const HeckeCharacter& lam, long D) {
    using boost::multiprecision::numerator;
    Int nm = numerator(lam.modulus.index_in_maximal_order());
    Int lvl = (lam.d < 0 ? -lam.d : lam.d) * nm;
    DirichletCharacter neb = DirichletCharacter::quadratic(lam.d) * lam.central;
    auto value = [&lam](const Lattice& I) -> std::optional<CycRat> {
        QuadElem g = principal_generator(I);
        if (!lam.ring->is_unit(lam.ring->class_id(g))) return std::nullopt;
        QuadElem gk = QuadElem::integer(lam.d, Rat(1));
        for (int i = 0; i < lam.k; ++i) gk = gk * g;
        return CycRat::from_turn(lam.finite_value(g)) * CycRat::from_quad(gk);
    };
    return theta_series(lam.d, lam.k, value, D, lvl, neb);
}

// Numeric embedding x + y sqrt(d) -> x + i y sqrt(|d|) for d < 0.
inline Cplx embed_quad(const QuadElem& e) {
    if (e.field_disc() >= 0)
        throw RingMismatch("embed_quad: imaginary quadratic elements only");
    Real sq = sqrt(to_real(Int(-e.field_disc())));
    return Cplx{to_real(e.x()), to_real(e.y()) * sq};
}

// Numeric-coefficient variant for large truncations (analytic estimates).
inline SeriesQ<Cplx> theta_series_complex(
    const Int& d, int kappa, const std::function<std::optional<Cplx>(const Lattice&)>& chi_value,
    long D, const Int& declared_level, const DirichletCharacter& neb) {
    require_fundamental(d);
    if (maximal_order_class_number(d) != 1)
        throw ClassNumberUnsupported("theta_series: class number > 1 not supported");
    SeriesQ<Cplx> g = SeriesQ<Cplx>::zeros(kappa + 1, declared_level, D);
    g.nebentypus = neb;
    using boost::multiprecision::numerator;
    for (auto& I : principal_ideals_by_norm(d, D)) {
        auto v = chi_value(I);
        if (!v) continue;
        long n = (long)numerator(I.index_in_maximal_order());
        g.coeffs[n] = g.coeffs[n] + *v;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Eigenform file ingestion.  Schema (one JSON object):
//   {"level": N0, "weight": k,
//    "nebentypus": {"modulus": m, "values": [[residue, num, den], ...]},
//    "coeff_field_degree": 1,
//    "coefficients": [[n, c], ...]}        n = 1..D consecutively, c integer
// ---------------------------------------------------------------------------

namespace detail {

inline long schema_int(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer())
        throw SchemaError(std::string("eigenform schema: ") + what + " must be an integer");
    return j.get<long>();
}

} // namespace detail

inline Eigenform ingest_eigenform_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("eigenform schema: top level must be an object");
    for (const char* key : {"level", "weight", "nebentypus", "coeff_field_degree", "coefficients"})
        if (!j.contains(key))
            throw SchemaError(std::string("eigenform schema: missing key ") + key);

    long level = detail::schema_int(j["level"], "level");
    long weight = detail::schema_int(j["weight"], "weight");
    if (level < 1 || weight < 1)
        throw SchemaError("eigenform schema: level and weight must be positive");
    long degree = detail::schema_int(j["coeff_field_degree"], "coeff_field_degree");
    if (degree != 1)
        throw SchemaError("eigenform schema: only coefficient field degree 1 is supported "
                          "(no defining polynomial in the schema)");

    const auto& nj = j["nebentypus"];
    if (!nj.is_object() || !nj.contains("modulus") || !nj.contains("values"))
        throw SchemaError("eigenform schema: nebentypus must have modulus and values");
    long mod = detail::schema_int(nj["modulus"], "nebentypus modulus");
    if (mod < 1) throw SchemaError("eigenform schema: nebentypus modulus must be positive");
    std::vector<Turn> table(mod, Turn::make_zero());
    std::vector<char> seen(mod, 0);
    if (!nj["values"].is_array())
        throw SchemaError("eigenform schema: nebentypus values must be an array");
    for (const auto& entry : nj["values"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw SchemaError("eigenform schema: nebentypus entries are [residue, num, den]");
        long r = detail::schema_int(entry[0], "nebentypus residue");
        long num = detail::schema_int(entry[1], "nebentypus turn numerator");
        long den = detail::schema_int(entry[2], "nebentypus turn denominator");
        if (r < 0 || r >= mod || den < 1)
            throw SchemaError("eigenform schema: nebentypus entry out of range");
        if (mod > 1 && igcd(Int(r), Int(mod)) != 1)
            throw SchemaError("eigenform schema: nebentypus residue not a unit");
        if (seen[r]) throw SchemaError("eigenform schema: duplicate nebentypus residue");
        seen[r] = 1;
        table[r] = Turn::of(Int(num), Int(den));
    }
    for (long r = 0; r < mod; ++r)
        if (!seen[r] && (mod == 1 || igcd(Int(r), Int(mod)) == 1))
            throw SchemaError("eigenform schema: nebentypus value missing for residue " +
                              std::to_string(r));
    DirichletCharacter psi(Int(mod), std::move(table));

    const auto& cj = j["coefficients"];
    if (!cj.is_array() || cj.empty())
        throw SchemaError("eigenform schema: coefficients must be a nonempty array");
    long D = (long)cj.size();
    SeriesQ<Rat> base = SeriesQ<Rat>::zeros((int)weight, Int(level), D);
    base.nebentypus = psi;
    for (long i = 0; i < D; ++i) {
        const auto& entry = cj[i];
        if (!entry.is_array() || entry.size() != 2)
            throw SchemaError("eigenform schema: coefficient entries are [n, c]");
        long n = detail::schema_int(entry[0], "coefficient index");
        if (n != i + 1)
            throw SchemaError("eigenform schema: coefficient index " + std::to_string(n) +
                              " out of order, expected " + std::to_string(i + 1));
        base.coeffs[n] = Rat(detail::schema_int(entry[1], "coefficient value"));
    }

    // Multiplicativity spot check: the first 20 coprime pairs in scan order.
    long checked = 0;
    for (long m = 2; m <= D && checked < 20; ++m)
        for (long n = m + 1; n * m <= D && checked < 20; ++n) {
            if (igcd(Int(m), Int(n)) != 1) continue;
            if (base.a(m * n) != base.a(m) * base.a(n))
                throw MultiplicativityError("a(" + std::to_string(m * n) + ") != a(" +
                                            std::to_string(m) + ")a(" + std::to_string(n) + ")");
            ++checked;
        }
    // Hecke recursion at good primes p with p^2 <= D.
    for (long p = 2; p * p <= D; ++p) {
        auto fp = factorize(Int(p));
        if (fp.size() != 1 || fp.begin()->second != 1) continue; // composite
        if (level % p == 0) continue;
        Rat psip = CoeffOps<Rat>::from_turn(psi.value(Int(p)));
        Rat pk1 = Rat(ipow(Int(p), weight - 1));
        Rat prev = Rat(1), cur = base.a(p);
        for (long pr = p; pr * p <= D; pr *= p) {
            Rat next = base.a(p) * cur - psip * pk1 * prev;
            if (base.a(pr * p) != next)
                throw RecursionError("Hecke recursion fails at p = " + std::to_string(p) +
                                     ", index " + std::to_string(pr * p));
            prev = cur;
            cur = next;
        }
    }

    Eigenform f;
    f.base = std::move(base);
    f.newform_level = level;
    return f;
}

inline Eigenform ingest_eigenform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open eigenform file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("eigenform file is not valid JSON: ") + e.what());
    }
    return ingest_eigenform_json(j);
}

} // namespace anticyc
