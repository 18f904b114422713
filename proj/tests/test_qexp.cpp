#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "anticyc/qexp.hpp"

using namespace anticyc;

namespace {

bool close(const Cplx& a, const Cplx& b) {
    return abs(a - b) < Real("1e-40");
}

SeriesQ<Rat> prefix(const SeriesQ<Rat>& f, long D) {
    SeriesQ<Rat> g = SeriesQ<Rat>::zeros(f.weight, f.level, D);
    g.nebentypus = f.nebentypus;
    for (long n = 1; n <= D; ++n) g.coeffs[n] = f.a(n);
    return g;
}

const Eigenform& form11() {
    static Eigenform f = ingest_eigenform(std::string(ANTICYC_DATA_DIR) + "/eigenform_11_2.json");
    return f;
}

const Eigenform& form32() {
    static Eigenform f = ingest_eigenform(std::string(ANTICYC_DATA_DIR) + "/eigenform_32_2.json");
    return f;
}

// Minimal valid eigenform JSON (trivial nebentypus) built from explicit
// coefficients, for schema error tests.
nlohmann::json small_json(long level, long weight, const std::vector<long>& a) {
    nlohmann::json j;
    j["level"] = level;
    j["weight"] = weight;
    j["coeff_field_degree"] = 1;
    j["nebentypus"] = {{"modulus", 1},
                       {"values", nlohmann::json::array({nlohmann::json::array({0, 0, 1})})}};
    auto arr = nlohmann::json::array();
    for (size_t i = 0; i < a.size(); ++i)
        arr.push_back(nlohmann::json::array({(long)(i + 1), a[i]}));
    j["coefficients"] = std::move(arr);
    return j;
}

std::vector<long> coeffs11(long D) {
    std::vector<long> a(D);
    using boost::multiprecision::numerator;
    for (long n = 1; n <= D; ++n) a[n - 1] = (long)numerator(form11().a(n));
    return a;
}

} // namespace

TEST_CASE("cyclotomic rationals: square roots with the declared embedding") {
    // sqrt(-7): square is -7, imaginary part positive.
    CycRat s7 = CycRat::sqrt_of(Int(-7));
    CHECK(s7 * s7 == CycRat(Rat(-7)));
    CHECK(close(s7.to_complex(), Cplx{Real(0), sqrt(Real(7))}));
    CHECK(s7.conjugate() == -s7);

    // Positive radicand: real embedding, positive root.
    CycRat s12 = CycRat::sqrt_of(Int(12));
    CHECK(s12 * s12 == CycRat(Rat(12)));
    CHECK(close(s12.to_complex(), Cplx{Real(2) * sqrt(Real(3)), Real(0)}));

    // Perfect squares collapse to rationals.
    CHECK(CycRat::sqrt_of(Int(9)) == CycRat(Rat(3)));
    CHECK(*CycRat::sqrt_of(Int(9)).as_rational() == Rat(3));

    // sqrt(-4) = 2i agrees with the fourth root of unity.
    CHECK(CycRat::sqrt_of(Int(-4)) == CycRat::root(4, 1) * Rat(2));

    // sqrt(-24) = 2 sqrt(-6) exactly.
    CHECK(CycRat::sqrt_of(Int(-24)) == CycRat::sqrt_of(Int(-6)) * Rat(2));
}

TEST_CASE("cyclotomic rationals: arithmetic, levels, rationality") {
    // 1 + z3 + z3^2 = 0.
    CycRat z3 = CycRat::root(3, 1);
    CHECK((CycRat(Rat(1)) + z3 + z3 * z3).is_zero());

    // A half turn is -1 at any level.
    CHECK(CycRat::from_turn(Turn::of(Int(1), Int(2))) == CycRat(Rat(-1)));

    // Cross-level identification z12^2 = z6.
    CHECK(CycRat::root(12, 2) == CycRat::root(6, 1));

    // Conjugation reverses the root index.
    CHECK(CycRat::root(5, 1).conjugate() == CycRat::root(5, 4));

    // z5 + z5^2 + z5^3 + z5^4 = -1 detected as rational.
    CycRat sum;
    for (long k = 1; k <= 4; ++k) sum += CycRat::root(5, k);
    auto r = sum.as_rational();
    REQUIRE(r.has_value());
    CHECK(*r == Rat(-1));
    CHECK(!CycRat::root(5, 1).as_rational().has_value());

    // Powers.
    CHECK(CycRat::root(7, 1).pow(7) == CycRat(Rat(1)));
    CHECK(CycRat::root(7, 3).pow(0) == CycRat(Rat(1)));

    // Quadratic field elements: (1 + sqrt(-7))(1 - sqrt(-7)) = 8.
    QuadElem e(Int(-7), Rat(1), Rat(1));
    CycRat ce = CycRat::from_quad(e);
    CycRat cebar = CycRat::from_quad(e.conj());
    CHECK(ce * cebar == CycRat(Rat(8)));
    CHECK(ce + cebar == CycRat(Rat(2)));
    CHECK(close(ce.to_complex(), Cplx{Real(1), sqrt(Real(7))}));
}

TEST_CASE("eigenform ingestion: level 11 newform data") {
    const Eigenform& f = form11();
    CHECK(f.base.weight == 2);
    CHECK(f.base.level == 11);
    CHECK(f.newform_level == 11);
    CHECK(f.base.truncation == 100000);
    const long expect[] = {1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1};
    for (long n = 1; n <= 11; ++n) CHECK(f.a(n) == Rat(expect[n - 1]));
    CHECK(f.a(19) == 0);
    CHECK(f.a(23) == Rat(-1));
    CHECK_THROWS_AS((void)f.a(100001), BoundExceeded);
    CHECK_THROWS_AS((void)f.a(0), BoundExceeded);
}

TEST_CASE("eta product recomputed by direct dense multiplication") {
    // Independent oracle: multiply out q prod (1-q^n)^2 (1-q^{11n})^2 one
    // factor at a time, never using the pentagonal expansion of the
    // generator tool.
    const long D = 2000;
    std::vector<int64_t> c(D + 1, 0);
    c[0] = 1;
    auto apply = [&](long n) {
        // multiply by (1 - q^n)^2 = 1 - 2 q^n + q^{2n}
        for (long i = D; i >= n; --i) {
            int64_t v = c[i] - 2 * c[i - n];
            if (i >= 2 * n) v += c[i - 2 * n];
            c[i] = v;
        }
    };
    for (long n = 1; n <= D; ++n) apply(n);
    for (long n = 1; 11 * n <= D; ++n) apply(11 * n);
    const Eigenform& f = form11();
    for (long n = 1; n <= D; ++n) CHECK(f.a(n) == Rat(c[n - 1]));
}

TEST_CASE("CM eigenform data: level 32") {
    const Eigenform& f = form32();
    CHECK(f.base.weight == 2);
    CHECK(f.base.level == 32);
    CHECK(f.base.truncation == 10000);
    CHECK(f.a(1) == 1);
    CHECK(f.a(5) == Rat(-2));
    CHECK(f.a(9) == Rat(-3));
    CHECK(f.a(13) == Rat(6));
    CHECK(f.a(25) == Rat(-1));
    // Inert primes contribute nothing: a(n) = 0 unless n = 1 mod 4.
    for (long n = 2; n <= 100; ++n)
        if (n % 4 != 1) CHECK(f.a(n) == 0);
}

TEST_CASE("eigenform schema and validation errors") {
    std::vector<long> good = coeffs11(60);
    CHECK_NOTHROW((void)ingest_eigenform_json(small_json(11, 2, good)));

    // Missing key.
    auto j = small_json(11, 2, good);
    j.erase("weight");
    CHECK_THROWS_AS((void)ingest_eigenform_json(j), SchemaError);

    // Unsupported coefficient field degree (schema has no defining polynomial).
    j = small_json(11, 2, good);
    j["coeff_field_degree"] = 2;
    CHECK_THROWS_AS((void)ingest_eigenform_json(j), SchemaError);

    // Out-of-order coefficient index.
    j = small_json(11, 2, good);
    j["coefficients"][4][0] = 7;
    CHECK_THROWS_AS((void)ingest_eigenform_json(j), SchemaError);

    // Fractional coefficient.
    j = small_json(11, 2, good);
    j["coefficients"][2][1] = 1.5;
    CHECK_THROWS_AS((void)ingest_eigenform_json(j), SchemaError);

    // Nebentypus residue table incomplete.
    j = small_json(11, 2, good);
    j["nebentypus"] = {{"modulus", 4},
                       {"values", nlohmann::json::array({nlohmann::json::array({1, 0, 1})})}};
    CHECK_THROWS_AS((void)ingest_eigenform_json(j), SchemaError);

    // Corrupt a(6): 6 = 2*3 breaks multiplicativity.
    auto bad = good;
    bad[5] += 1;
    CHECK_THROWS_AS((void)ingest_eigenform_json(small_json(11, 2, bad)), MultiplicativityError);

    // Corrupt a(9) and patch a(18) so every scanned coprime pair still
    // multiplies out; only the Hecke recursion at p = 3 can object.
    bad = good;
    bad[8] = -3; // true value is a(3)^2 - 3 = -2
    bad[17] = 6; // keeps a(18) = a(2) a(9)
    CHECK_THROWS_AS((void)ingest_eigenform_json(small_json(11, 2, bad)), RecursionError);
}

TEST_CASE("Hecke operators: U, V, T identities on the level 11 form") {
    SeriesQ<Rat> g = prefix(form11().base, 2100);

    // V_p then U_p is the identity on coefficients.
    SeriesQ<Rat> v7 = hecke_V(g, 7);
    CHECK(v7.level == Int(77));
    CHECK(v7.a(14) == g.a(2));
    CHECK(v7.a(15) == 0);
    SeriesQ<Rat> uv = hecke_U(v7, 7);
    REQUIRE(uv.truncation >= g.truncation);
    for (long n = 1; n <= g.truncation; ++n) CHECK(uv.a(n) == g.a(n));

    // U_7 levels: 7 does not divide 11, so the level grows.
    SeriesQ<Rat> u7 = hecke_U(g, 7);
    CHECK(u7.level == Int(77));
    CHECK(u7.a(3) == g.a(21));

    // Eigenform property: T_p f = a(p) f at good p.
    for (long p : {2, 3, 5, 7}) {
        SeriesQ<Rat> t = hecke_T(g, p);
        CHECK(t.level == g.level);
        for (long n = 1; n <= t.truncation; ++n) CHECK(t.a(n) == g.a(p) * g.a(n));
    }
    // At p = 11 | N the operator degenerates to U_11, and a(11) = 1.
    SeriesQ<Rat> t11 = hecke_T(g, 11);
    for (long n = 1; n <= t11.truncation; ++n) CHECK(t11.a(n) == g.a(11) * g.a(n));
}

TEST_CASE("p-depletion kills exactly the multiples of p") {
    SeriesQ<Rat> g = prefix(form11().base, 800);
    SeriesQ<Rat> d3 = p_deplete(g, 3); // internal two-formula comparison runs here
    CHECK(d3.level == Int(99));
    for (long n = 1; n <= 800; ++n) {
        if (n % 3 == 0)
            CHECK(d3.a(n) == 0);
        else
            CHECK(d3.a(n) == g.a(n));
    }
    // Idempotent on coefficients.
    SeriesQ<Rat> d33 = p_deplete(d3, 3);
    for (long n = 1; n <= 800; ++n) CHECK(d33.a(n) == d3.a(n));
    // Depletion is the twist by the principal character mod p.
    SeriesQ<Rat> tw = twist(g, DirichletCharacter::principal(Int(3)));
    CHECK(tw.level == d3.level);
    for (long n = 1; n <= 800; ++n) CHECK(tw.a(n) == d3.a(n));
}

TEST_CASE("twisting by quadratic characters") {
    SeriesQ<Rat> g = prefix(form11().base, 200);
    DirichletCharacter chi4 = DirichletCharacter::quadratic(Int(-4));
    SeriesQ<Rat> t = twist(g, chi4);
    CHECK(t.level == Int(11 * 16));
    for (long n = 1; n <= 200; ++n) {
        if (n % 2 == 0)
            CHECK(t.a(n) == 0);
        else if (n % 4 == 1)
            CHECK(t.a(n) == g.a(n));
        else
            CHECK(t.a(n) == -g.a(n));
    }
    // Nebentypus metadata: trivial times chi4^2 = principal mod 4.
    CHECK(t.nebentypus.modulus() == 4);
    CHECK(t.nebentypus.value(Int(3)).is_one());
    CHECK(t.nebentypus.value(Int(2)).is_zero());

    DirichletCharacter chi7 = DirichletCharacter::quadratic(Int(-7));
    SeriesQ<Rat> t7 = twist(g, chi7);
    CHECK(t7.level == Int(11 * 49));
    CHECK(t7.a(3) == -g.a(3)); // kronecker(-7,3) = -1
    CHECK(t7.a(2) == g.a(2));  // 2 splits in Q(sqrt(-7))
    CHECK(t7.a(7) == 0);
}

TEST_CASE("Satake roots from the coefficient data") {
    const Eigenform& f = form11();

    // l = 7: roots of X^2 + 2X + 7, i.e. -1 +- sqrt(-6).
    auto [a7, b7] = satake(f, 7);
    CHECK(a7 + b7 == CycRat(f.a(7)));
    CHECK(a7 * b7 == CycRat(Rat(7)));
    CHECK(a7 == CycRat(Rat(-1)) + CycRat::sqrt_of(Int(-6)));
    CHECK(a7.to_complex().im > 0); // declared root choice

    // l = 19: a(19) = 0, so the roots are +- sqrt(-19) (i.e. i sqrt(19)
    // classically, unitary roots +- i).
    auto [a19, b19] = satake(f, 19);
    CHECK(a19 == CycRat::sqrt_of(Int(-19)));
    CHECK(b19 == -a19);
    CHECK(close(a19.to_complex(), Cplx{Real(0), sqrt(Real(19))}));

    // l = 11 divides the newform level: the pair is (a(11), 0).
    auto [a11, b11] = satake(f, 11);
    CHECK(a11 == CycRat(Rat(1)));
    CHECK(b11 == CycRat(Rat(0)));
}

TEST_CASE("stabilization rebuilds coefficients multiplicatively") {
    const Eigenform& f = form11();
    EigenformT<CycRat> g = stabilize(f, {7}, 2000);
    CycRat alpha = satake(f, 7).first;

    CHECK(g.base.level == Int(77));
    CHECK(g.newform_level == Int(11));
    CHECK(g.base.weight == 2);

    // a(7^r) = alpha^r; other coefficients are untouched.
    CHECK(g.a(7) == alpha);
    CHECK(g.a(49) == alpha.pow(2));
    CHECK(g.a(343) == alpha.pow(3));
    CHECK(g.a(14) == CycRat(f.a(2)) * alpha);
    CHECK(g.a(21) == CycRat(f.a(3)) * alpha);
    for (long n = 1; n <= 60; ++n)
        if (n % 7 != 0) CHECK(g.a(n) == CycRat(f.a(n)));

    // The defining property: U_7 g = alpha g.
    SeriesQ<CycRat> u = hecke_U(g.base, 7);
    for (long n = 1; n <= u.truncation; ++n) CHECK(u.a(n) == alpha * g.a(n));

    // Stabilizing at a(19) = 0 gives the purely imaginary root.
    EigenformT<CycRat> g19 = stabilize(f, {19}, 100);
    CHECK(g19.a(19) == CycRat::sqrt_of(Int(-19)));

    // Two primes at once: the coefficient at 7 * 19 is the product of roots.
    EigenformT<CycRat> g2 = stabilize(f, {7, 19}, 150);
    CHECK(g2.a(133) == alpha * CycRat::sqrt_of(Int(-19)));

    // Declared guards.
    CHECK_THROWS_AS((void)stabilize(f, {7}, 2000, {19}), VanishingSplitCoefficient);
    CHECK_THROWS_AS((void)stabilize(f, {11}, 100), std::invalid_argument);
    CHECK_THROWS_AS((void)stabilize(f, {7}, 200000), BoundExceeded);
}

TEST_CASE("theta series of the quartic character matches the level 32 form") {
    // The weight 1 character over Q(i) whose theta series is the CM newform
    // of level 32: declared metadata and all coefficients agree with the
    // independently generated eta-product data.
    HeckeCharacter lam = build_lambda(Int(-4), 1, DirichletCharacter::quadratic(Int(-4)));
    SeriesQ<CycRat> th = theta_series(lam, 500);
    CHECK(th.weight == 2);
    CHECK(th.level == Int(32));
    const Eigenform& f = form32();
    for (long n = 1; n <= 500; ++n) {
        auto r = th.a(n).as_rational();
        REQUIRE(r.has_value());
        CHECK(*r == f.a(n));
    }
}

TEST_CASE("theta series of the ramified weight 1 character over Q(sqrt(-7))") {
    HeckeCharacter lam = build_lambda(Int(-7), 1, DirichletCharacter::quadratic(Int(-7)));
    SeriesQ<CycRat> th = theta_series(lam, 12);
    CHECK(th.weight == 2);
    CHECK(th.level == Int(49));
    const long expect[] = {1, 1, 0, -1, 0, 0, 0, -3, -3, 0, 4, 0};
    for (long n = 1; n <= 12; ++n) {
        auto r = th.a(n).as_rational();
        REQUIRE(r.has_value());
        CHECK(*r == Rat(expect[n - 1]));
    }
}

TEST_CASE("trivial-character theta counts principal ideals by norm") {
    // kappa = 0, chi = 1: coefficients are ideal counts, which for class
    // number one equal the norm-form representation numbers divided by the
    // number of units.
    auto one = [](const Lattice&) -> std::optional<CycRat> { return CycRat(Rat(1)); };
    SeriesQ<CycRat> th =
        theta_series(Int(-7), 0, one, 30, Int(7), DirichletCharacter::quadratic(Int(-7)));
    CHECK(th.weight == 1);
    for (long n = 1; n <= 30; ++n) {
        // Brute-force count of x^2 + x y + 2 y^2 = n (norm form of Q(sqrt(-7))).
        long count = 0;
        for (long x = -40; x <= 40; ++x)
            for (long y = -40; y <= 40; ++y)
                if (x * x + x * y + 2 * y * y == n) ++count;
        auto r = th.a(n).as_rational();
        REQUIRE(r.has_value());
        CHECK(*r == Rat(count, 2)); // w = 2 units
    }
}

TEST_CASE("complex embedding of series and quadratic elements") {
    QuadElem e(Int(-7), Rat(1, 2), Rat(3));
    Cplx z = embed_quad(e);
    CHECK(close(z, Cplx{Real(1) / 2, Real(3) * sqrt(Real(7))}));
    CHECK(close(z, CycRat::from_quad(e).to_complex()));

    SeriesQ<Rat> g = prefix(form11().base, 20);
    SeriesQ<Cplx> gc = embed_complex(g);
    CHECK(gc.weight == g.weight);
    CHECK(close(gc.a(2), Cplx{Real(-2), Real(0)}));

    // Rational coefficients reject genuinely complex character values.
    CHECK_THROWS_AS((void)CoeffOps<Rat>::from_turn(Turn::of(Int(1), Int(4))), RingMismatch);
}
