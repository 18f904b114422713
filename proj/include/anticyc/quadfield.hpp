#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "anticyc/abelian.hpp"
#include "anticyc/bigint.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/numbers.hpp"

namespace anticyc {

// ---------------------------------------------------------------------------
// Imaginary quadratic fields: exact elements, lattices, forms, class groups.
// ---------------------------------------------------------------------------

inline bool is_squarefree(Int n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Fundamental discriminant of an imaginary quadratic field: d < 0 with
// d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree.
inline bool is_fundamental_discriminant(const Int& d) {
    if (d >= 0) return false;
    if (fmod(d, 4) == 1) return is_squarefree(d);
    if (fmod(d, 4) == 0) {
        Int m = d / 4;
        Int m4 = fmod(m, 4);
        return (m4 == 2 || m4 == 3) && is_squarefree(m);
    }
    return false;
}

inline void require_fundamental(const Int& d) {
    if (!is_fundamental_discriminant(d))
        throw BadCharacterSpec("not a fundamental imaginary quadratic discriminant: " + d.str());
}

// Number of roots of unity in the maximal order.
inline int unit_count(const Int& d) {
    require_fundamental(d);
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

// ---------------------------------------------------------------------------
// Field elements x + y*sqrt(d), exact rational coordinates.
// ---------------------------------------------------------------------------

class QuadElem {
public:
    QuadElem() : d_(0) {} // null element, only valid as a container placeholder
    QuadElem(Int field_disc, Rat x, Rat y)
        : d_(std::move(field_disc)), x_(std::move(x)), y_(std::move(y)) {
        require_fundamental(d_);
    }
    static QuadElem integer(const Int& d, const Rat& x) { return QuadElem(d, x, Rat(0)); }
    static QuadElem sqrt_disc(const Int& d) { return QuadElem(d, Rat(0), Rat(1)); }
    // (d + sqrt(d))/2, a generator of the maximal order over Z
    static QuadElem omega(const Int& d) { return QuadElem(d, Rat(d, 2), Rat(1, 2)); }

    const Int& field_disc() const { return d_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    QuadElem conj() const { return QuadElem(d_, x_, -y_); }
    Rat norm() const { return x_ * x_ - Rat(d_) * y_ * y_; }
    Rat trace() const { return 2 * x_; }

    QuadElem operator-() const { return QuadElem(d_, -x_, -y_); }
    QuadElem operator+(const QuadElem& o) const {
        require_same(o);
        return QuadElem(d_, x_ + o.x_, y_ + o.y_);
    }
    QuadElem operator-(const QuadElem& o) const {
        require_same(o);
        return QuadElem(d_, x_ - o.x_, y_ - o.y_);
    }
    QuadElem operator*(const QuadElem& o) const {
        require_same(o);
        return QuadElem(d_, x_ * o.x_ + Rat(d_) * y_ * o.y_, x_ * o.y_ + y_ * o.x_);
    }
    QuadElem operator*(const Rat& r) const { return QuadElem(d_, x_ * r, y_ * r); }
    QuadElem inverse() const {
        Rat n = norm();
        if (n == 0) throw std::domain_error("QuadElem: inverse of zero");
        return QuadElem(d_, x_ / n, -y_ / n);
    }
    QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }
    bool operator==(const QuadElem& o) const {
        return d_ == o.d_ && x_ == o.x_ && y_ == o.y_;
    }

    // Embedding with sqrt(d) -> i*sqrt(|d|), the upper-half-plane choice.
    Cplx to_complex() const {
        return Cplx{to_real(x_), to_real(y_) * sqrt(to_real(Int(-d_)))};
    }

    std::string str() const {
        return "(" + rat_str(x_) + ") + (" + rat_str(y_) + ")*sqrt(" + d_.str() + ")";
    }

private:
    static std::string rat_str(const Rat& r) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(r) == 1) return numerator(r).str();
        return numerator(r).str() + "/" + denominator(r).str();
    }
    void require_same(const QuadElem& o) const {
        if (d_ != o.d_) throw RingMismatch("QuadElem: mixed field discriminants");
    }
    Int d_;
    Rat x_, y_;
};

inline QuadElem operator*(const Rat& r, const QuadElem& e) { return e * r; }

// ---------------------------------------------------------------------------
// Binary quadratic forms a x^2 + b xy + c y^2, positive definite.
// ---------------------------------------------------------------------------

struct QForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool is_primitive() const { return igcd(igcd(a, b), c) == 1; }
    bool is_reduced() const {
        if (a <= 0 || disc() >= 0) return false;
        if (!(-a < b && b <= a && a <= c)) return false;
        if (a == c && b < 0) return false;
        return true;
    }
    QForm reduced() const {
        if (a <= 0 || disc() >= 0)
            throw std::invalid_argument("QForm: reduction needs a positive definite form");
        Int D = disc();
        QForm f = *this;
        for (int guard = 0; guard < 100000; ++guard) {
            // normalize -a < b <= a
            if (!(-f.a < f.b && f.b <= f.a)) {
                Int r = f.a - fmod(f.a - f.b, 2 * f.a); // in (-a, a]
                f.b = r;
                f.c = (r * r - D) / (4 * f.a);
            }
            if (f.a > f.c || (f.a == f.c && f.b < 0)) {
                f = QForm{f.c, -f.b, f.a};
                continue;
            }
            if (f.is_reduced()) return f;
        }
        throw RecursionError("QForm: reduction did not terminate");
    }
    static QForm principal(const Int& D) {
        Int b0 = fmod(D, 2);
        return QForm{Int(1), b0, (b0 * b0 - D) / 4};
    }
    Cplx cm_point() const {
        // root of a t^2 + b t + c in the upper half plane
        Real s = sqrt(to_real(Int(4 * a * c - b * b)));
        return Cplx{to_real(Rat(-b, 2 * a)), s / (2 * to_real(a))};
    }
    bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    std::string str() const {
        return "(" + a.str() + "," + b.str() + "," + c.str() + ")";
    }
};

// ---------------------------------------------------------------------------
// Lattices (full rank Z-modules) in the field, canonical Hermite form:
// basis v1 = (a + b*sqrt(d))/den, v2 = t/den with b,t > 0, 0 <= a < t,
// gcd(den, a, b, t) = 1.  Im(v1/v2) > 0, so (v1, v2) is an oriented basis.
// ---------------------------------------------------------------------------

class Lattice {
public:
    Lattice() : d_(0), den_(1), a_(0), b_(0), t_(0) {} // null placeholder

    static Lattice from_generators(const Int& d, const std::vector<QuadElem>& gens) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        require_fundamental(d);
        Int den = 1;
        for (auto& g : gens) {
            if (g.field_disc() != d) throw RingMismatch("Lattice: generator in wrong field");
            den = ilcm(den, denominator(g.x()));
            den = ilcm(den, denominator(g.y()));
        }
        // integer coordinate pairs (X, Y) meaning (X + Y*sqrt(d))/den
        Int g_y = 0, x_of_g = 0, t = 0;
        for (auto& g : gens) {
            Int X = numerator(Rat(g.x() * den)), Y = numerator(Rat(g.y() * den));
            if (Y == 0) {
                t = igcd(t, X);
                continue;
            }
            if (g_y == 0) {
                if (Y < 0) { Y = -Y; X = -X; }
                g_y = Y;
                x_of_g = X;
                continue;
            }
            Int u, v;
            Int gg = egcd(g_y, Y, u, v);
            // eliminate: (Y/gg)*v1 - (g_y/gg)*gen lies on the rational axis
            t = igcd(t, (Y / gg) * x_of_g - (g_y / gg) * X);
            x_of_g = u * x_of_g + v * X;
            g_y = gg;
        }
        if (g_y == 0 || t == 0)
            throw std::invalid_argument("Lattice: generators do not span a full lattice");
        if (t < 0) t = -t;
        x_of_g = fmod(x_of_g, t);
        Lattice L;
        L.d_ = d;
        L.den_ = den;
        L.a_ = x_of_g;
        L.b_ = g_y;
        L.t_ = t;
        L.normalize();
        return L;
    }
    static Lattice from_basis(const QuadElem& v1, const QuadElem& v2) {
        return from_generators(v1.field_disc(), {v1, v2});
    }
    static Lattice order(const Int& d, const Int& conductor) {
        if (conductor <= 0) throw std::invalid_argument("Lattice: conductor must be positive");
        return from_generators(
            d, {QuadElem::integer(d, Rat(1)), QuadElem::omega(d) * Rat(conductor)});
    }
    static Lattice maximal_order(const Int& d) { return order(d, 1); }

    bool is_null() const { return d_ == 0; }
    const Int& field_disc() const { return d_; }
    QuadElem basis1() const { return QuadElem(d_, Rat(a_, den_), Rat(b_, den_)); }
    QuadElem basis2() const { return QuadElem(d_, Rat(t_, den_), Rat(0)); }

    // Covolume relative to the maximal order (= absolute ideal norm for
    // integral ideals of the maximal order).
    Rat index_in_maximal_order() const { return Rat(2 * b_ * t_, den_ * den_); }

    bool operator==(const Lattice& o) const {
        return d_ == o.d_ && den_ == o.den_ && a_ == o.a_ && b_ == o.b_ && t_ == o.t_;
    }
    bool operator<(const Lattice& o) const {
        return std::tie(d_, den_, a_, b_, t_) < std::tie(o.d_, o.den_, o.a_, o.b_, o.t_);
    }

    // Exact coordinates of e on the canonical basis: e = c1*v1 + c2*v2.
    std::pair<Rat, Rat> coordinates(const QuadElem& e) const {
        if (e.field_disc() != d_) throw RingMismatch("Lattice: element in wrong field");
        Rat c1 = e.y() * den_ / b_;
        Rat c2 = (e.x() * den_ - c1 * a_) / t_;
        return {c1, c2};
    }
    bool contains(const QuadElem& e) const {
        using boost::multiprecision::denominator;
        auto [c1, c2] = coordinates(e);
        return denominator(c1) == 1 && denominator(c2) == 1;
    }

    Lattice operator*(const Lattice& o) const {
        require_same(o);
        std::vector<QuadElem> gens;
        for (auto& u : {basis1(), basis2()})
            for (auto& v : {o.basis1(), o.basis2()}) gens.push_back(u * v);
        return from_generators(d_, gens);
    }
    Lattice operator+(const Lattice& o) const {
        require_same(o);
        return from_generators(d_, {basis1(), basis2(), o.basis1(), o.basis2()});
    }
    Lattice scaled(const QuadElem& e) const {
        if (e.is_zero()) throw std::invalid_argument("Lattice: scaling by zero");
        return from_generators(d_, {basis1() * e, basis2() * e});
    }
    Lattice scaled(const Rat& r) const {
        return scaled(QuadElem::integer(d_, r));
    }
    Lattice conjugate() const {
        return from_generators(d_, {basis1().conj(), basis2().conj()});
    }
    // Intersection of two full lattices: k*this is inside the intersection
    // for k = [sum : other], so scanning the finitely many cosets below that
    // index is exhaustive.
    Lattice intersect(const Lattice& o) const {
        require_same(o);
        Lattice s = *this + o;
        Rat k_rat = o.index_in_maximal_order() / s.index_in_maximal_order();
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(k_rat) != 1)
            throw InternalMismatch("Lattice: non-integral relative index");
        Int k = numerator(k_rat);
        std::vector<QuadElem> gens = {basis1() * Rat(k), basis2() * Rat(k)};
        for (Int i = 0; i < k; ++i)
            for (Int j = 0; j < k; ++j) {
                if (i == 0 && j == 0) continue;
                QuadElem v = basis1() * Rat(i) + basis2() * Rat(j);
                if (o.contains(v)) gens.push_back(v);
            }
        return from_generators(d_, gens);
    }

    // The primitive integral positive definite form proportional to
    // N(x*v1 + y*v2); its discriminant is (multiplier conductor)^2 * d.
    QForm primitive_form() const {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        QuadElem w1 = basis1(), w2 = basis2();
        Rat A = w1.norm(), B = (w1 * w2.conj()).trace(), C = w2.norm();
        Int lcm = ilcm(ilcm(denominator(A), denominator(B)), denominator(C));
        Int ai = numerator(Rat(A * lcm)), bi = numerator(Rat(B * lcm)),
            ci = numerator(Rat(C * lcm));
        Int g = igcd(igcd(ai, bi), ci);
        return QForm{ai / g, bi / g, ci / g};
    }

    // Conductor of the multiplier ring {x : x*L inside L}.
    Int multiplier_conductor() const {
        Int D = primitive_form().disc();
        if (D % d_ != 0) throw InternalMismatch("Lattice: form discriminant not a multiple of d");
        Int f2 = D / d_;
        Int f = isqrt_floor(f2);
        if (f * f != f2) throw InternalMismatch("Lattice: conductor^2 not a perfect square");
        return f;
    }

    // Covolume relative to the multiplier ring; the natural norm of a proper
    // ideal of that ring.
    Rat norm_in_multiplier_ring() const {
        return index_in_maximal_order() / Rat(multiplier_conductor());
    }

    // Inverse as a proper ideal of its multiplier ring, with the defining
    // property L * inverse() == multiplier ring.
    Lattice proper_inverse() const {
        Lattice inv = conjugate().scaled(Rat(1) / norm_in_multiplier_ring());
        Lattice ord = order(d_, multiplier_conductor());
        if (!(*this * inv == ord))
            throw NotProperIdeal("Lattice: not invertible over its multiplier ring");
        return inv;
    }

    std::string str() const {
        return "[(" + a_.str() + "+" + b_.str() + "*sqrt(" + d_.str() + "))/" + den_.str() +
               ", " + t_.str() + "/" + den_.str() + "]";
    }

private:
    void normalize() {
        Int g = igcd(igcd(a_, b_), igcd(t_, den_));
        if (g > 1) { a_ /= g; b_ /= g; t_ /= g; den_ /= g; }
    }
    void require_same(const Lattice& o) const {
        if (d_ != o.d_) throw RingMismatch("Lattice: mixed field discriminants");
    }
    Int d_, den_, a_, b_, t_;
};

// Ideal of the form dictionary: (a, b, c) of discriminant f^2 d maps to the
// proper O_f-ideal with Z-basis (a, (-b + f*sqrt(d))/2).
inline Lattice form_to_ideal(const Int& d, const QForm& F) {
    Int D = F.disc();
    if (D % d != 0) throw RingMismatch("form_to_ideal: discriminant not over this field");
    Int f = isqrt_floor(D / d);
    if (f * f * d != D) throw RingMismatch("form_to_ideal: discriminant not f^2*d");
    return Lattice::from_generators(
        d, {QuadElem::integer(d, Rat(F.a)), QuadElem(d, Rat(-F.b, 2), Rat(f, 2))});
}

inline QForm ideal_to_form(const Lattice& L) { return L.primitive_form().reduced(); }

// Lagrange-Gauss reduction: basis (u, v) of L with |u| minimal and |v| the
// minimum over vectors independent from u.
inline std::pair<QuadElem, QuadElem> gauss_reduced_basis(const Lattice& L) {
    QuadElem u = L.basis1(), v = L.basis2();
    auto nrm = [](const QuadElem& e) { return e.norm(); };
    if (nrm(u) < nrm(v)) std::swap(u, v);
    for (int guard = 0; guard < 10000; ++guard) {
        // round(Tr(u * conj(v)) / (2 N(v))) as nearest integer
        Rat mu = (u * v.conj()).trace() / (2 * v.norm());
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        Int m = fdiv(2 * numerator(mu) + denominator(mu), 2 * denominator(mu));
        u = u - v * Rat(m);
        if (nrm(u) >= nrm(v)) return {v, u};
        std::swap(u, v);
    }
    throw RecursionError("gauss_reduced_basis: did not terminate");
}

// ---------------------------------------------------------------------------
// Split primes and residue coordinates.
// ---------------------------------------------------------------------------

enum class SplitType { split, inert, ramified };

inline SplitType split_type(const Int& d, const Int& l) {
    Int k = kronecker(d, l);
    if (k == 1) return SplitType::split;
    if (k == -1) return SplitType::inert;
    return SplitType::ramified;
}

// Square root r of d mod p^s (p odd split prime), canonicalized so that
// r mod p is the smaller of the two roots mod p.
inline Int hensel_sqrt_disc(const Int& d, long p, int s) {
    if (p == 2) throw NonSplitPrime("hensel_sqrt_disc: p = 2 not supported");
    if (split_type(d, p) != SplitType::split)
        throw NonSplitPrime("hensel_sqrt_disc: prime is not split");
    Int r = sqrt_mod_ppow(d, p, s);
    Int rp = fmod(r, p);
    if (rp > p - rp) r = ipow(Int(p), s) - r;
    return r;
}

// The distinguished split prime factor: sqrt(d) = +r mod P, and its
// conjugate Pbar with sqrt(d) = -r.
inline std::pair<Lattice, Lattice> split_prime_ideals(const Int& d, long p) {
    Int r = hensel_sqrt_disc(d, p, 1);
    // b = r mod p and b = d mod 2, so (-b + sqrt(d))/2 is integral and in P
    Int b = r;
    if (fmod(b, 2) != fmod(d, 2)) b += p;
    Lattice P = Lattice::from_generators(
        d, {QuadElem::integer(d, Rat(p)), QuadElem(d, Rat(-b, 2), Rat(1, 2))});
    return {P, P.conjugate()};
}

// Residue of e mod P^s (side = false) or mod Pbar^s (side = true), as an
// integer in [0, p^s); requires e to be p-integral.
inline Int residue_at_split_prime(const QuadElem& e, long p, int s, bool conjugate_side) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int ps = ipow(Int(p), s);
    Int r = hensel_sqrt_disc(e.field_disc(), p, s);
    if (conjugate_side) r = ps - r;
    auto red = [&](const Rat& q) {
        Int den = denominator(q);
        if (igcd(den, ps) != 1)
            throw DivisionNotExact("residue_at_split_prime: element is not p-integral");
        return fmod(numerator(q) * mod_inverse(den, ps), ps);
    };
    return fmod(red(e.x()) + red(e.y()) * r, ps);
}

// Canonical generator of a principal ideal: among the unit multiples of g,
// the one with positive sqrt(d)-part, maximal x, then maximal y.
inline std::vector<QuadElem> unit_group_elements(const Int& d) {
    QuadElem z = QuadElem::integer(d, Rat(-1));
    if (d == -4) z = QuadElem(d, Rat(0), Rat(1, 2));
    if (d == -3) z = QuadElem(d, Rat(1, 2), Rat(1, 2));
    std::vector<QuadElem> us;
    QuadElem u = QuadElem::integer(d, Rat(1));
    do {
        us.push_back(u);
        u = u * z;
    } while (!(u == us.front()));
    return us;
}

inline QuadElem canonical_associate(const QuadElem& g) {
    if (g.is_zero()) return g;
    std::optional<QuadElem> best;
    for (auto& u : unit_group_elements(g.field_disc())) {
        QuadElem cand = g * u;
        if (cand.y() < 0) continue;
        if (cand.y() == 0 && cand.x() < 0) continue;
        if (!best || std::tie(cand.x(), cand.y()) > std::tie(best->x(), best->y()))
            best = cand;
    }
    if (!best) throw InternalMismatch("canonical_associate: no candidate");
    return *best;
}

// All nonzero integral elements of norm <= nmax, one canonical associate per
// principal ideal, grouped by norm (index = norm).
inline std::vector<std::vector<QuadElem>> canonical_elements_by_norm(const Int& d, long nmax) {
    require_fundamental(d);
    std::vector<std::vector<QuadElem>> out(nmax + 1);
    Int ymax = isqrt_floor(Int(4) * nmax / -d);
    for (Int Y = -ymax; Y <= ymax; ++Y) {
        Int rest = Int(4) * nmax + d * Y * Y;
        if (rest < 0) continue;
        Int xmax = isqrt_floor(rest);
        for (Int X = -xmax; X <= xmax; ++X) {
            if (X == 0 && Y == 0) continue;
            if (fmod(X - Y * d, 2) != 0) continue;
            Int n4 = X * X - d * Y * Y;
            if (n4 % 4 != 0) continue;
            Int n = n4 / 4;
            if (n < 1 || n > nmax) continue;
            QuadElem e(d, Rat(X, 2), Rat(Y, 2));
            if (canonical_associate(e) == e) out[(long)n].push_back(e);
        }
    }
    for (auto& v : out)
        std::sort(v.begin(), v.end(), [](const QuadElem& a, const QuadElem& b) {
            return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
        });
    return out;
}

// Principal integral ideals of the maximal order with norm <= nmax, sorted
// by (norm, canonical generator).
inline std::vector<Lattice> principal_ideals_by_norm(const Int& d, long nmax) {
    std::vector<Lattice> out;
    auto elems = canonical_elements_by_norm(d, nmax);
    for (long n = 1; n <= nmax; ++n)
        for (auto& e : elems[n])
            out.push_back(Lattice::maximal_order(d).scaled(e));
    return out;
}

// Generator of a principal maximal-order ideal (class number 1 path); throws
// NoSolution when the shortest vector does not generate.
inline QuadElem principal_generator(const Lattice& I) {
    auto [u, v] = gauss_reduced_basis(I);
    if (u.norm() != I.index_in_maximal_order())
        throw NoSolution("principal_generator: ideal is not principal");
    return canonical_associate(u);
}

// ---------------------------------------------------------------------------
// Ring class groups: proper ideal classes of the order of conductor c,
// enumerated as reduced primitive forms of discriminant c^2 d.
// ---------------------------------------------------------------------------

// Elementary class number of the order of conductor c over discriminant d,
// from the class number h(d) of the maximal order (enumerated exactly):
//   c = 1: h(d);  c > 1: 2 h(d) / w * prod_{l^e || c} l^(e-1) (l - (d|l)).
inline Int ring_class_number(const Int& d, const Int& conductor);

class RingClassGroup {
public:
    RingClassGroup(Int field_disc, Int conductor)
        : d_(std::move(field_disc)), c_(std::move(conductor)) {
        require_fundamental(d_);
        if (c_ <= 0) throw std::invalid_argument("RingClassGroup: conductor must be positive");
        disc_ = c_ * c_ * d_;
        enumerate();
        structure_ = abelian_structure(
            (long)forms_.size(), identity(),
            [this](long i, long j) { return mul(i, j); });
    }

    const Int& field_disc() const { return d_; }
    const Int& conductor() const { return c_; }
    const Int& disc() const { return disc_; }
    long size() const { return (long)forms_.size(); }
    const std::vector<QForm>& forms() const { return forms_; }
    const AbelianStructure& structure() const { return structure_; }

    long index_of(const QForm& f) const {
        auto it = index_.find(std::make_tuple(f.a, f.b, f.c));
        if (it == index_.end())
            throw NotProperIdeal("RingClassGroup: form not in this class group");
        return it->second;
    }
    long class_of(const Lattice& L) const {
        QForm f = ideal_to_form(L);
        if (f.disc() != disc_)
            throw ConductorMismatch("RingClassGroup: lattice has conductor " +
                                    L.multiplier_conductor().str() + ", expected " + c_.str());
        return index_of(f);
    }
    Lattice ideal(long i) const { return form_to_ideal(d_, forms_[i]); }

    long identity() const { return index_of(QForm::principal(disc_).reduced()); }
    long mul(long i, long j) const {
        return index_of(ideal_to_form(ideal(i) * ideal(j)));
    }
    long inverse(long i) const {
        QForm f = forms_[i];
        return index_of(QForm{f.a, -f.b, f.c}.reduced());
    }
    long power(long i, Int e) const {
        long acc = identity(), base = i;
        Int k = e;
        if (k < 0) { base = inverse(base); k = -k; }
        while (k > 0) {
            if (fmod(k, 2) == 1) acc = mul(acc, base);
            base = mul(base, base);
            k /= 2;
        }
        return acc;
    }

    // Natural surjection onto the class group of a divisor conductor:
    // extend the ideal to the smaller order and read off its class.
    long project_to(const RingClassGroup& target, long i) const {
        if (target.field_disc() != d_ || c_ % target.conductor() != 0)
            throw ConductorMismatch("RingClassGroup: projection needs a divisor conductor");
        Lattice L = ideal(i) * Lattice::order(d_, target.conductor());
        return target.class_of(L);
    }

private:
    void enumerate() {
        Int amax = isqrt_floor(-disc_ / 3);
        for (Int a = 1; a <= amax; ++a)
            for (Int b = 1 - a; b <= a; ++b) {
                if (fmod(b - disc_, 2) != 0) continue;
                Int t = b * b - disc_;
                if (t % (4 * a) != 0) continue;
                Int cc = t / (4 * a);
                if (cc < a) continue;
                if (a == cc && b < 0) continue;
                if (igcd(igcd(a, b), cc) != 1) continue;
                forms_.push_back(QForm{a, b, cc});
            }
        std::sort(forms_.begin(), forms_.end());
        for (long i = 0; i < (long)forms_.size(); ++i)
            index_[std::make_tuple(forms_[i].a, forms_[i].b, forms_[i].c)] = i;
        Int expected = ring_class_number(d_, c_);
        if (expected != (long)forms_.size())
            throw InternalMismatch("RingClassGroup: enumeration disagrees with the class "
                                   "number formula: " + std::to_string(forms_.size()) +
                                   " vs " + expected.str());
    }

    Int d_, c_, disc_;
    std::vector<QForm> forms_;
    std::map<std::tuple<Int, Int, Int>, long> index_;
    AbelianStructure structure_;
};

inline Int maximal_order_class_number(const Int& d) {
    require_fundamental(d);
    Int count = 0;
    Int amax = isqrt_floor(-d / 3);
    for (Int a = 1; a <= amax; ++a)
        for (Int b = 1 - a; b <= a; ++b) {
            if (fmod(b - d, 2) != 0) continue;
            Int t = b * b - d;
            if (t % (4 * a) != 0) continue;
            Int cc = t / (4 * a);
            if (cc < a) continue;
            if (a == cc && b < 0) continue;
            if (igcd(igcd(a, b), cc) != 1) continue;
            ++count;
        }
    return count;
}

inline Int ring_class_number(const Int& d, const Int& conductor) {
    Int h = maximal_order_class_number(d);
    if (conductor == 1) return h;
    Int num = 2 * h;
    for (auto& [l, e] : factorize(conductor))
        num *= ipow(l, e - 1) * (l - kronecker(d, l));
    Int w = unit_count(d);
    if (num % w != 0)
        throw NonIntegralResult("ring_class_number: formula gave a non-integer");
    return num / w;
}

} // namespace anticyc
