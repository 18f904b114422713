#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "anticyc/quadfield.hpp"

using namespace anticyc;

namespace {

// Classical class numbers of small imaginary quadratic fields, used as
// frozen oracles for the enumeration.
const std::pair<long, long> kClassNumbers[] = {
    {-3, 1},  {-4, 1},  {-7, 1},  {-8, 1},   {-11, 1}, {-15, 2}, {-20, 2},
    {-23, 3}, {-24, 2}, {-31, 3}, {-47, 5},  {-71, 7}, {-84, 4}, {-163, 1},
};

Lattice frak_p_bar(long d, long p) { return split_prime_ideals(Int(d), p).second; }

} // namespace

TEST_CASE("fundamental discriminant predicate") {
    CHECK(is_fundamental_discriminant(Int(-3)));
    CHECK(is_fundamental_discriminant(Int(-4)));
    CHECK(is_fundamental_discriminant(Int(-7)));
    CHECK(is_fundamental_discriminant(Int(-84)));
    CHECK_FALSE(is_fundamental_discriminant(Int(-9)));   // not squarefree
    CHECK_FALSE(is_fundamental_discriminant(Int(-12)));  // 4 * (-3), -3 = 1 mod 4
    CHECK_FALSE(is_fundamental_discriminant(Int(-5)));   // wrong residue mod 4
    CHECK_FALSE(is_fundamental_discriminant(Int(5)));    // not imaginary
}

TEST_CASE("element arithmetic is exact") {
    Int d = -7;
    QuadElem w = QuadElem::omega(d); // (-7 + sqrt(-7))/2
    CHECK(w.norm() == Rat(14));      // (49 + 7)/4
    CHECK(w.trace() == Rat(-7));
    // omega satisfies x^2 - tr x + nm = 0
    CHECK((w * w - w * Rat(-7) + QuadElem::integer(d, Rat(14))).is_zero());
    QuadElem pi(d, Rat(2), Rat(1)); // 2 + sqrt(-7)
    CHECK(pi.norm() == Rat(11));
    CHECK((pi * pi.inverse() == QuadElem::integer(d, Rat(1))));
    CHECK((pi.conj() + pi == QuadElem::integer(d, Rat(4))));
    CHECK_THROWS_AS(pi * QuadElem::omega(Int(-11)), RingMismatch);
}

TEST_CASE("lattice normal form, membership, coordinates") {
    Int d = -7;
    Lattice ok = Lattice::maximal_order(d);
    CHECK(ok.index_in_maximal_order() == Rat(1));
    CHECK(ok.contains(QuadElem::omega(d)));
    CHECK(ok.contains(QuadElem(d, Rat(1, 2), Rat(1, 2)))); // (1+sqrt(-7))/2
    CHECK_FALSE(ok.contains(QuadElem(d, Rat(1, 2), Rat(0))));
    CHECK_FALSE(ok.contains(QuadElem(d, Rat(0), Rat(1, 3))));

    Lattice o11 = Lattice::order(d, 11);
    CHECK(o11.index_in_maximal_order() == Rat(11));
    CHECK(o11.multiplier_conductor() == 11);
    CHECK(ok.multiplier_conductor() == 1);

    // generators in any order and with redundancy give the same normal form
    Lattice same = Lattice::from_generators(
        d, {QuadElem::omega(d) * Rat(11), QuadElem::integer(d, Rat(3)),
            QuadElem::integer(d, Rat(1)), QuadElem::omega(d) * Rat(22)});
    CHECK(same == o11);

    auto [c1, c2] = ok.coordinates(QuadElem(d, Rat(5, 2), Rat(3, 2)));
    QuadElem back = ok.basis1() * c1 + ok.basis2() * c2;
    CHECK(back == QuadElem(d, Rat(5, 2), Rat(3, 2)));
}

TEST_CASE("split prime ideals and residues over Q(sqrt(-7)), p = 11") {
    Int d = -7;
    auto [P, Pb] = split_prime_ideals(d, 11);
    CHECK(P.index_in_maximal_order() == Rat(11));
    CHECK(Pb.index_in_maximal_order() == Rat(11));
    CHECK_FALSE(P == Pb);
    // P * Pbar = (11)
    CHECK(P * Pb == Lattice::maximal_order(d).scaled(Rat(11)));
    // canonical square root of -7 mod 11 is 2; mod 11^2 it lifts to 90
    CHECK(hensel_sqrt_disc(d, 11, 1) == 2);
    CHECK(hensel_sqrt_disc(d, 11, 2) == 90);

    QuadElem pi(d, Rat(2), Rat(1)); // 2 + sqrt(-7), norm 11
    CHECK(residue_at_split_prime(pi, 11, 1, false) == 4); // 2 + 2
    CHECK(residue_at_split_prime(pi, 11, 1, true) == 0);  // 2 - 2: pi generates Pbar
    CHECK(Pb.contains(pi));
    CHECK_FALSE(P.contains(pi));
    CHECK(principal_generator(Pb) == pi);
    CHECK(principal_generator(P) == QuadElem(d, Rat(-2), Rat(1)));

    CHECK_THROWS_AS(split_prime_ideals(d, 3), NonSplitPrime);  // inert
    CHECK_THROWS_AS(split_prime_ideals(d, 7), NonSplitPrime);  // ramified
    CHECK_THROWS_AS(
        residue_at_split_prime(QuadElem(d, Rat(1, 11), Rat(0)), 11, 1, false),
        DivisionNotExact);
}

TEST_CASE("split prime over Q(sqrt(-7)), p = 23") {
    Int d = -7;
    CHECK(hensel_sqrt_disc(d, 23, 1) == 4);
    QuadElem g = principal_generator(frak_p_bar(-7, 23));
    CHECK(g == QuadElem(d, Rat(4), Rat(1))); // 4 + sqrt(-7), norm 23
    CHECK(residue_at_split_prime(g, 23, 1, true) == 0);
    CHECK(residue_at_split_prime(g, 23, 1, false) == 8);
}

TEST_CASE("form reduction and the ideal dictionary") {
    QForm f{11, 9, 2}; // discriminant -7
    CHECK(f.disc() == -7);
    CHECK(f.reduced() == QForm{1, 1, 2});
    CHECK(QForm::principal(Int(-7)) == QForm{1, 1, 2});
    CHECK(QForm{1, 1, 2}.is_reduced());

    // round trip through the ideal dictionary lands in the same class
    QForm g{3, 1, 4}; // discriminant -47
    Lattice I = form_to_ideal(Int(-47), g);
    CHECK(I.index_in_maximal_order() == Rat(3));
    CHECK(ideal_to_form(I) == g);

    // cm point of the principal form of discriminant -7
    Cplx tau = QForm{1, 1, 2}.cm_point();
    CHECK(abs(tau.re - Real("-0.5")) < Real("1e-45"));
    CHECK(abs(tau.im - sqrt(Real(7)) / 2) < Real("1e-45"));

    CHECK_THROWS_AS(form_to_ideal(Int(-7), QForm{1, 0, 1}), RingMismatch);
}

TEST_CASE("proper ideal inversion") {
    auto [P, Pb] = split_prime_ideals(Int(-7), 11);
    CHECK(P * P.proper_inverse() == Lattice::maximal_order(Int(-7)));
    // a proper ideal of the conductor-11 order
    RingClassGroup cl(Int(-7), Int(11));
    for (long i = 0; i < cl.size(); ++i) {
        Lattice I = cl.ideal(i);
        CHECK(I.multiplier_conductor() == 11);
        CHECK(I * I.proper_inverse() == Lattice::order(Int(-7), Int(11)));
    }
}

TEST_CASE("maximal order class numbers match the classical table") {
    for (auto& [d, h] : kClassNumbers)
        CHECK(maximal_order_class_number(Int(d)) == h);
}

TEST_CASE("ring class numbers for the working configurations") {
    CHECK(ring_class_number(Int(-7), Int(1)) == 1);
    CHECK(ring_class_number(Int(-7), Int(11)) == 10);
    CHECK(ring_class_number(Int(-7), Int(23)) == 22);
    CHECK(ring_class_number(Int(-7), Int(121)) == 110);
    CHECK(ring_class_number(Int(-7), Int(2)) == 1);   // h(-28) = 1
    CHECK(ring_class_number(Int(-4), Int(5)) == 2);   // h(-100) = 2
    CHECK(ring_class_number(Int(-3), Int(2)) == 1);   // h(-12) = 1
    CHECK(ring_class_number(Int(-15), Int(2)) == 2);  // h(-60) = 2
}

TEST_CASE("class group structure: cyclic and non-cyclic cases") {
    RingClassGroup c47(Int(-47), Int(1));
    CHECK(c47.size() == 5);
    REQUIRE(c47.structure().invariants.size() == 1);
    CHECK(c47.structure().invariants[0] == 5);

    RingClassGroup c84(Int(-84), Int(1));
    CHECK(c84.size() == 4);
    REQUIRE(c84.structure().invariants.size() == 2);
    CHECK(c84.structure().invariants[0] == 2);
    CHECK(c84.structure().invariants[1] == 2);

    RingClassGroup r11(Int(-7), Int(11));
    CHECK(r11.size() == 10);
    REQUIRE(r11.structure().invariants.size() == 1);
    CHECK(r11.structure().invariants[0] == 10);

    RingClassGroup r23(Int(-7), Int(23));
    CHECK(r23.size() == 22);
    REQUIRE(r23.structure().invariants.size() == 1);
    CHECK(r23.structure().invariants[0] == 22);
}

TEST_CASE("group law is consistent with the computed coordinates") {
    RingClassGroup cl(Int(-7), Int(11));
    const AbelianStructure& st = cl.structure();
    long e = cl.identity();
    for (long i = 0; i < cl.size(); ++i) {
        CHECK(cl.mul(i, e) == i);
        CHECK(cl.mul(i, cl.inverse(i)) == e);
        for (long j = 0; j < cl.size(); ++j) {
            long k = cl.mul(i, j);
            CHECK(cl.mul(j, i) == k);
            for (size_t t = 0; t < st.invariants.size(); ++t) {
                Int want = fmod(st.coords[i][t] + st.coords[j][t], st.invariants[t]);
                CHECK(st.coords[k][t] == want);
            }
        }
    }
    // coordinates separate elements
    std::set<std::vector<Int>> distinct(st.coords.begin(), st.coords.end());
    CHECK((long)distinct.size() == cl.size());
}

TEST_CASE("projection to a divisor conductor") {
    RingClassGroup big(Int(-7), Int(11));
    RingClassGroup triv(Int(-7), Int(1));
    for (long i = 0; i < big.size(); ++i)
        CHECK(big.project_to(triv, i) == triv.identity());

    // conductor 121 -> 11 projection is the expected 11-to-1 surjection
    RingClassGroup huge(Int(-7), Int(121));
    REQUIRE(huge.size() == 110);
    std::map<long, long> fibre;
    for (long i = 0; i < huge.size(); ++i) ++fibre[huge.project_to(big, i)];
    CHECK((long)fibre.size() == big.size());
    for (auto& [cls, count] : fibre) CHECK(count == 11);
}

TEST_CASE("gauss reduced basis finds the shortest vector") {
    auto [P, Pb] = split_prime_ideals(Int(-7), 11);
    auto [u, v] = gauss_reduced_basis(P);
    CHECK(u.norm() == Rat(11));
    CHECK(v.norm() >= u.norm());
    // the reduced basis still spans the ideal
    CHECK(Lattice::from_basis(u, v) == P);
}

TEST_CASE("canonical associates") {
    Int d = -7;
    QuadElem pi(d, Rat(2), Rat(1));
    CHECK(canonical_associate(pi) == pi);
    CHECK(canonical_associate(-pi) == pi);
    // Q(i): four associates, the canonical one has y > 0 and maximal x
    Int d4 = -4;
    QuadElem z(d4, Rat(1), Rat(1, 2)); // 1 + i
    QuadElem zc = canonical_associate(z);
    CHECK(zc == QuadElem(d4, Rat(1), Rat(1, 2)));
    CHECK(canonical_associate(-z) == zc);
    CHECK(canonical_associate(z * QuadElem(d4, Rat(0), Rat(1, 2))) == zc);
}

TEST_CASE("unit groups") {
    CHECK(unit_group_elements(Int(-7)).size() == 2);
    CHECK(unit_group_elements(Int(-4)).size() == 4);
    CHECK(unit_group_elements(Int(-3)).size() == 6);
    CHECK(unit_count(Int(-3)) == 6);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(Lattice::order(Int(-7), Int(0)), std::invalid_argument);
    CHECK_THROWS_AS(
        Lattice::from_generators(Int(-7), {QuadElem::integer(Int(-7), Rat(2))}),
        std::invalid_argument);
    CHECK_THROWS_AS(require_fundamental(Int(-5)), BadCharacterSpec);
}
