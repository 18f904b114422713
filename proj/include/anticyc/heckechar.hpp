#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "anticyc/abelian.hpp"
#include "anticyc/quadfield.hpp"
#include "anticyc/turn.hpp"

namespace anticyc {

// ---------------------------------------------------------------------------
// Characters of finite abelian groups, exact root-of-unity valued.
// ---------------------------------------------------------------------------

class GroupCharacter {
public:
    GroupCharacter(const AbelianStructure& st, std::vector<Int> exps)
        : st_(&st), exps_(std::move(exps)) {
        if (exps_.size() != st.invariants.size())
            throw std::invalid_argument("GroupCharacter: wrong number of exponents");
        for (size_t i = 0; i < exps_.size(); ++i) exps_[i] = fmod(exps_[i], st.invariants[i]);
    }
    static GroupCharacter trivial(const AbelianStructure& st) {
        return GroupCharacter(st, std::vector<Int>(st.invariants.size(), Int(0)));
    }

    const std::vector<Int>& exponents() const { return exps_; }
    const AbelianStructure& structure() const { return *st_; }

    Turn value_on_coords(const std::vector<Int>& coords) const {
        Turn t = Turn::one();
        for (size_t i = 0; i < exps_.size(); ++i)
            t = t * Turn::of(exps_[i] * coords[i], st_->invariants[i]);
        return t;
    }
    Turn value_at(long element_id) const { return value_on_coords(st_->coords[element_id]); }

    bool is_trivial() const {
        for (auto& e : exps_)
            if (e != 0) return false;
        return true;
    }
    Int order() const {
        Int o = 1;
        for (size_t i = 0; i < exps_.size(); ++i) {
            Int m = st_->invariants[i];
            o = ilcm(o, m / igcd(exps_[i], m));
        }
        return o;
    }
    GroupCharacter inverse() const {
        std::vector<Int> e = exps_;
        for (size_t i = 0; i < e.size(); ++i) e[i] = fmod(-e[i], st_->invariants[i]);
        return GroupCharacter(*st_, e);
    }
    GroupCharacter operator*(const GroupCharacter& o) const {
        if (st_ != o.st_) throw RingMismatch("GroupCharacter: different groups");
        std::vector<Int> e = exps_;
        for (size_t i = 0; i < e.size(); ++i) e[i] = fmod(e[i] + o.exps_[i], st_->invariants[i]);
        return GroupCharacter(*st_, e);
    }
    GroupCharacter power(const Int& n) const {
        std::vector<Int> e = exps_;
        for (size_t i = 0; i < e.size(); ++i) e[i] = fmod(e[i] * n, st_->invariants[i]);
        return GroupCharacter(*st_, e);
    }
    bool operator==(const GroupCharacter& o) const { return st_ == o.st_ && exps_ == o.exps_; }

    // All characters in lexicographic exponent order (deterministic).
    static std::vector<GroupCharacter> all_characters(const AbelianStructure& st) {
        std::vector<GroupCharacter> out;
        std::vector<Int> e(st.invariants.size(), Int(0));
        while (true) {
            out.push_back(GroupCharacter(st, e));
            size_t i = e.size();
            while (i > 0) {
                --i;
                if (++e[i] < st.invariants[i]) break;
                e[i] = 0;
                if (i == 0) return out;
            }
            if (st.invariants.empty()) return out;
        }
    }

private:
    const AbelianStructure* st_;
    std::vector<Int> exps_;
};

// ---------------------------------------------------------------------------
// Exact Dirichlet characters (value table on residues, Turn valued).
// ---------------------------------------------------------------------------

class DirichletCharacter {
public:
    DirichletCharacter() : modulus_(1), values_{Turn::one()} {}
    DirichletCharacter(Int modulus, std::vector<Turn> values)
        : modulus_(std::move(modulus)), values_(std::move(values)) {
        if (Int((long)values_.size()) != modulus_)
            throw BadCharacterSpec("DirichletCharacter: value table size mismatch");
    }
    static DirichletCharacter trivial() { return DirichletCharacter(); }
    // Quadratic character n -> kronecker(D, n), modulus |D|.
    static DirichletCharacter quadratic(const Int& D) {
        Int m = D < 0 ? -D : D;
        std::vector<Turn> vals;
        for (Int n = 0; n < m; ++n) {
            int k = kronecker(D, n);
            vals.push_back(k == 0 ? Turn::make_zero() : Turn::of(k == 1 ? 0 : 1, 2));
        }
        return DirichletCharacter(m, std::move(vals));
    }

    // Principal character mod q: 1 on units, 0 elsewhere.
    static DirichletCharacter principal(const Int& q) {
        std::vector<Turn> vals;
        for (Int n = 0; n < q; ++n)
            vals.push_back(igcd(n, q) == 1 ? Turn::one() : Turn::make_zero());
        return DirichletCharacter(q, std::move(vals));
    }

    const Int& modulus() const { return modulus_; }
    Turn value(const Int& n) const { return values_[(long)fmod(n, modulus_)]; }
    bool is_trivial_values() const {
        for (auto& v : values_)
            if (!v.is_zero() && !v.is_one()) return false;
        return true;
    }
    DirichletCharacter inverse() const {
        std::vector<Turn> vals;
        for (auto& v : values_) vals.push_back(v.is_zero() ? v : v.inverse());
        return DirichletCharacter(modulus_, std::move(vals));
    }
    // Pointwise product on the lcm of the moduli.
    DirichletCharacter operator*(const DirichletCharacter& o) const {
        Int L = ilcm(modulus_, o.modulus_);
        std::vector<Turn> vals;
        for (Int n = 0; n < L; ++n) vals.push_back(value(n) * o.value(n));
        return DirichletCharacter(L, std::move(vals));
    }
    // Smallest f | modulus with chi(n) = 1 whenever n = 1 mod f, gcd(n, q) = 1.
    Int conductor() const {
        std::vector<Int> divisors{1};
        for (auto& [p, e] : factorize(modulus_)) {
            std::vector<Int> next;
            Int pk = 1;
            for (unsigned i = 0; i <= e; ++i, pk *= p)
                for (auto& v : divisors) next.push_back(v * pk);
            divisors = next;
        }
        std::sort(divisors.begin(), divisors.end());
        for (auto& f : divisors) {
            bool ok = true;
            for (Int n = 1; ok && n < modulus_; ++n)
                if (fmod(n - 1, f) == 0 && !value(n).is_zero() && !value(n).is_one()) ok = false;
            if (ok) return f;
        }
        return modulus_;
    }
    bool is_primitive() const { return conductor() == modulus_; }

private:
    Int modulus_;
    std::vector<Turn> values_;
};

// ---------------------------------------------------------------------------
// Residue rings R/m of an order R modulo an integral lattice ideal m, with
// the unit group presented through AbelianStructure.
// ---------------------------------------------------------------------------

class ResidueRing {
public:
    ResidueRing(Lattice ring, Lattice mod) : ring_(std::move(ring)), mod_(std::move(mod)) {
        if (!ring_.contains(mod_.basis1()) || !ring_.contains(mod_.basis2()))
            throw RingMismatch("ResidueRing: modulus not contained in the ring");
        // integer coordinates of the modulus on the ring basis, then a 2x2
        // Hermite form [[h00, h01], [0, h11]] for canonical representatives
        auto [p1, q1] = ring_.coordinates(mod_.basis1());
        auto [p2, q2] = ring_.coordinates(mod_.basis2());
        Int a = int_of(p1), b = int_of(q1), c = int_of(p2), dd = int_of(q2);
        // rows (a, b), (c, dd); column-10 elimination via gcd on first column
        while (c != 0) {
            Int q = fdiv(a, c);
            a -= q * c; b -= q * dd;
            std::swap(a, c); std::swap(b, dd);
        }
        if (a < 0) { a = -a; b = -b; }
        if (dd < 0) { dd = -dd; }
        b = fmod(b, dd);
        h00_ = a; h01_ = b; h11_ = dd;
        if (h00_ == 0 || h11_ == 0)
            throw RingMismatch("ResidueRing: modulus is not a full lattice");
        size_ = (long)Int(h00_ * h11_);
        // unit table; the zero ring R/R gets the trivial unit group
        for (long id = 0; id < size_; ++id)
            if (size_ == 1 || unit_test(id)) {
                unit_pos_[id] = (long)unit_ids_.size();
                unit_ids_.push_back(id);
            }
        long one = class_id(QuadElem::integer(ring_.field_disc(), Rat(1)));
        unit_structure_ = abelian_structure(
            (long)unit_ids_.size(), unit_pos_.at(one),
            [this](long i, long j) { return unit_pos_.at(mul(unit_ids_[i], unit_ids_[j])); });
    }

    long size() const { return size_; }
    long unit_count() const { return (long)unit_ids_.size(); }
    const Lattice& ring() const { return ring_; }
    const Lattice& modulus() const { return mod_; }
    const AbelianStructure& unit_structure() const { return unit_structure_; }
    const std::vector<long>& unit_ids() const { return unit_ids_; }

    // id = i * h11 + j for representative i*r1 + j*r2, 0<=i<h00, 0<=j<h11.
    long class_id(const QuadElem& x) const {
        auto [ci, cj] = ring_.coordinates(x);
        Int i = int_of(ci), j = int_of(cj);
        Int ir = fmod(i, h00_);
        Int jr = fmod(j - fdiv(i - ir, h00_) * h01_, h11_);
        return (long)Int(ir * h11_ + jr);
    }
    QuadElem representative(long id) const {
        Int i = id / (long)h11_, j = id % (long)h11_;
        return ring_.basis1() * Rat(i) + ring_.basis2() * Rat(j);
    }
    long mul(long i, long j) const {
        return class_id(representative(i) * representative(j));
    }
    bool is_unit(long id) const { return unit_pos_.count(id) > 0; }
    long unit_index(long id) const {
        auto it = unit_pos_.find(id);
        if (it == unit_pos_.end()) throw NoSolution("ResidueRing: not a unit");
        return it->second;
    }
    // unit-group element index of x (throws if x is not coprime to m)
    long unit_index_of(const QuadElem& x) const { return unit_index(class_id(x)); }

private:
    static Int int_of(const Rat& r) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(r) != 1)
            throw RingMismatch("ResidueRing: element outside the ring");
        return numerator(r);
    }
    bool unit_test(long id) const {
        QuadElem x = representative(id);
        if (x.is_zero()) return false;
        Lattice gen = Lattice::from_generators(
            ring_.field_disc(),
            {x * ring_.basis1(), x * ring_.basis2(), mod_.basis1(), mod_.basis2()});
        return gen == ring_;
    }

    Lattice ring_, mod_;
    Int h00_, h01_, h11_;
    long size_;
    std::vector<long> unit_ids_;
    std::map<long, long> unit_pos_;
    AbelianStructure unit_structure_;
};

// ---------------------------------------------------------------------------
// Roots of unity in the maximal order as exact turns.
// ---------------------------------------------------------------------------

inline Turn unit_turn(const QuadElem& u) {
    // unit_group_elements lists the powers of a fixed primitive root of unity
    auto us = unit_group_elements(u.field_disc());
    long w = (long)us.size();
    for (long k = 0; k < w; ++k)
        if (us[k] == u) return Turn::of(k, w);
    throw NoSolution("unit_turn: not a root of unity");
}

// ---------------------------------------------------------------------------
// Hecke characters of infinity type (k, 0) over a class number 1 field:
//   lambda((alpha)) = chi(alpha) * alpha^k
// with chi a character of (O/m)^x satisfying chi(u) = u^(-k) on roots of
// unity (well-definedness) and chi(n) = target(n) on positive integers
// (central character condition).  The minimal modulus m is found by search
// over principal ideals ordered by norm.
// ---------------------------------------------------------------------------

struct HeckeCharacter {
    Int d;
    int k = 0;
    Lattice modulus;                     // finite part conductor m
    std::shared_ptr<ResidueRing> ring;   // O_K / m
    GroupCharacter chi;                  // on the unit group of O_K / m
    DirichletCharacter central;          // chi restricted to positive integers

    Turn finite_value(const QuadElem& alpha) const {
        return chi.value_at(ring->unit_index_of(alpha));
    }
    // Exact value on a principal integral ideal prime to m, as the pair
    // (root of unity, canonical generator): value = turn * alpha^k.
    std::pair<Turn, QuadElem> value_parts(const Lattice& ideal) const {
        QuadElem alpha = principal_generator(ideal);
        return {finite_value(alpha), alpha};
    }
    Cplx value_complex(const Lattice& ideal) const {
        auto [t, alpha] = value_parts(ideal);
        return t.to_complex() * ipow(alpha.to_complex(), k);
    }
};

// target: required restriction of chi to positive integers (as a Dirichlet
// character; zero values are "don't care" there, coprimality is decided by m).
inline HeckeCharacter build_lambda(const Int& d, int k, const DirichletCharacter& target,
                                   long norm_bound = 64) {
    require_fundamental(d);
    if (maximal_order_class_number(d) != 1)
        throw ClassNumberUnsupported("build_lambda: class number > 1 not supported");
    auto units = unit_group_elements(d);
    Lattice ok = Lattice::maximal_order(d);
    for (auto& m : principal_ideals_by_norm(d, norm_bound)) {
        auto ring = std::make_shared<ResidueRing>(ok, m);
        // additive order of 1 in O/m = the positive generator of m cap Z;
        // integer constraints must be checked over a full period of both the
        // residue ring and the target character
        Int M = 1;
        while (!m.contains(QuadElem::integer(d, Rat(M)))) ++M;
        M = ilcm(M, target.modulus());
        bool units_ok = true;
        for (auto& u : units)
            if (!ring->is_unit(ring->class_id(u))) units_ok = false;
        if (!units_ok) continue; // cannot happen for honest ideals; safety
        for (auto& chi : GroupCharacter::all_characters(ring->unit_structure())) {
            bool ok_all = true;
            for (auto& u : units) {
                Turn want = unit_turn(u).pow(-k);
                if (!(chi.value_at(ring->unit_index_of(u)) == want)) { ok_all = false; break; }
            }
            for (Int n = 1; ok_all && n <= M; ++n) {
                QuadElem e = QuadElem::integer(d, Rat(n));
                if (!ring->is_unit(ring->class_id(e))) continue;
                Turn want = target.value(n);
                if (want.is_zero()) continue; // target undefined there
                if (!(chi.value_at(ring->unit_index_of(e)) == want)) ok_all = false;
            }
            if (ok_all) return HeckeCharacter{d, k, m, ring, chi, target};
        }
    }
    throw NoSolution("build_lambda: no admissible character up to norm " +
                     std::to_string(norm_bound));
}

// ---------------------------------------------------------------------------
// Ring class characters and the anticyclotomic residue parametrization.
// ---------------------------------------------------------------------------

class RingClassCharacter {
public:
    RingClassCharacter(std::shared_ptr<const RingClassGroup> group, GroupCharacter chi)
        : group_(std::move(group)), chi_(std::move(chi)) {}

    static std::vector<RingClassCharacter> all_of(std::shared_ptr<const RingClassGroup> g) {
        std::vector<RingClassCharacter> out;
        for (auto& c : GroupCharacter::all_characters(g->structure()))
            out.push_back(RingClassCharacter(g, c));
        return out;
    }

    const RingClassGroup& group() const { return *group_; }
    const GroupCharacter& character() const { return chi_; }
    Int order() const { return chi_.order(); }
    bool is_trivial() const { return chi_.is_trivial(); }

    Turn value_at_class(long i) const { return chi_.value_at(i); }
    Turn value_at_ideal(const Lattice& proper_ideal) const {
        return value_at_class(group_->class_of(proper_ideal));
    }

    // Conductor: the smallest divisor c' of the group conductor such that the
    // character is trivial on the kernel of the projection to level c'.
    Int conductor() const {
        Int c = group_->conductor();
        std::vector<Int> divisors{1};
        for (auto& [p, e] : factorize(c)) {
            std::vector<Int> next;
            Int pk = 1;
            for (unsigned i = 0; i <= e; ++i, pk *= p)
                for (auto& v : divisors) next.push_back(v * pk);
            divisors = next;
        }
        std::sort(divisors.begin(), divisors.end());
        for (auto& cp : divisors) {
            if (cp == c) break;
            RingClassGroup target(group_->field_disc(), cp);
            bool factors = true;
            // trivial on the kernel of the projection?
            std::map<long, Turn> seen;
            for (long i = 0; i < group_->size() && factors; ++i) {
                long t = group_->project_to(target, i);
                auto it = seen.find(t);
                if (it == seen.end()) seen.emplace(t, chi_.value_at(i));
                else if (!(it->second == chi_.value_at(i))) factors = false;
            }
            if (factors) return cp;
        }
        return c;
    }

private:
    std::shared_ptr<const RingClassGroup> group_;
    GroupCharacter chi_;
};

// The residue-line lattice L_z = {y in O_K : y = z*y' in the two split-prime
// coordinates mod p^s}, intersected down to the prime-to-p conductor c; a
// proper ideal of the order of conductor c*p^s for unit z.
inline Lattice residue_line_lattice(const Int& d, const Int& c, long p, int s, const Int& z) {
    Int ps = ipow(Int(p), s);
    if (igcd(z, Int(p)) != 1)
        throw BadCharacterSpec("residue_line_lattice: z must be a p-adic unit");
    Int r = hensel_sqrt_disc(d, p, s);
    // w1 = 1 mod Pbar^s, 0 mod P^s;  w2 = conj(w1) the other way around
    Int inv = mod_inverse(fmod(-2 * r, ps), ps);
    QuadElem w1 = (QuadElem::sqrt_disc(d) - QuadElem::integer(d, Rat(r))) * Rat(inv);
    QuadElem w2 = w1.conj();
    QuadElem gen = w1 * Rat(fmod(z, ps)) + w2;
    Lattice Lz = Lattice::from_generators(
        d, {gen, QuadElem::integer(d, Rat(ps)), QuadElem::omega(d) * Rat(ps)});
    if (c == 1) return Lz;
    return Lz.intersect(Lattice::order(d, c));
}

// ---------------------------------------------------------------------------
// Gauss sums of characters of (Z/p^n)^x, exact in Z[zeta].
// ---------------------------------------------------------------------------

// G(phi) = sum_u phi(u) e(u / q) over u mod q = p^n, in Z[zeta_N] with
// N = lcm(q, order of phi).
inline CycInt gauss_sum(const std::function<Turn(const Int&)>& phi, const Int& q, long N) {
    if (N % (long)q != 0)
        throw CyclotomicLevelTooSmall("gauss_sum: level must be a multiple of the modulus");
    CycInt g(N);
    for (Int u = 0; u < q; ++u) {
        Turn t = phi(u);
        if (t.is_zero()) continue;
        g += CycInt::from_turn(N, t) * CycInt::root(N, u * (N / (long)q));
    }
    return g;
}

// Finite Fourier transform on Z/q: fhat(a) = sum_b f(b) e(-ab/q).
inline std::vector<CycInt> fourier_transform(const std::vector<CycInt>& f, long N) {
    long q = (long)f.size();
    if (N % q != 0)
        throw CyclotomicLevelTooSmall("fourier_transform: level must be a multiple of q");
    std::vector<CycInt> out;
    out.reserve(q);
    for (long a = 0; a < q; ++a) {
        CycInt s(N);
        for (long b = 0; b < q; ++b)
            s += f[b] * CycInt::root(N, fmod(Int(-a) * b, q) * (N / q));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace anticyc
