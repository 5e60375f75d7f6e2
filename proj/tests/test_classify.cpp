#include <doctest.h>

#include "ekm/classify.hpp"
#include "test_util.hpp"

using ekm::AdmissibleSetup;
using ekm::Parity;
using ekm::RatPoly;
using ekm::Rational;
using ekm::Verdict;
using ekm::VerdictKind;

namespace {

AdmissibleSetup koiso_sakane() {
    AdmissibleSetup s;
    s.factors = {{1, Rational(1, 2), Rational(2), std::nullopt},
                 {1, Rational(-1, 2), Rational(-2), std::nullopt}};
    return s;
}

AdmissibleSetup single_curve(const Rational& x, const Rational& s) {
    AdmissibleSetup setup;
    setup.factors = {{1, x, s, std::nullopt}};
    return setup;
}

} // namespace

TEST_CASE("Koiso-Sakane class is CSC") {
    const Verdict v = ekm::classify(koiso_sakane());
    CHECK(v.kind == VerdictKind::ExtremalCSC);
    CHECK(v.solution.futaki == Rational(0));
    CHECK(v.witness.count == 0);
    // quotient against (1+z)(1-z): (1 + x1 z)(1 + x2 z) + c x1 x2 (1-z^2) with c = 1/2
    CHECK(v.quotient == RatPoly{Rational(7, 8), Rational(0), Rational(-1, 8)});
}

TEST_CASE("hyperbolic factor close to the boundary destabilizes") {
    // s = -3 at x = 9/10 has a sign change (criterion-5 class)
    const Verdict v = ekm::classify(single_curve(Rational(9, 10), Rational(-3)));
    CHECK(v.kind == VerdictKind::NoExtremalSignChange);
    CHECK(v.witness.count >= 1);
    // s = -2 at x = 9/10 squeaks through: min of the quotient is +911/1e5-ish
    const Verdict v2 = ekm::classify(single_curve(Rational(9, 10), Rational(-2)));
    CHECK(v2.kind == VerdictKind::ExtremalNonCSC);
}

TEST_CASE("ruled surface closed form c(s,x)") {
    CHECK(ekm::ruled_surface_c(0, 0, Rational(2), Rational(1, 2)) == Rational(-1, 22));
    // boundary displays c(s,1), c(s,-1)
    ekm::testutil::Rng rng(13);
    for (int i = 0; i < 25; ++i) {
        const int d0 = static_cast<int>(rng() % 4), dinf = static_cast<int>(rng() % 4);
        const Rational s = ekm::testutil::random_rational(rng, -4.0, 4.0);
        CHECK(ekm::ruled_surface_c(d0, dinf, s, Rational(1)) ==
              -(Rational(2 * (1 + d0)) - s) / (Rational(2) * Rational(1 + d0) * Rational(2 + d0)));
        CHECK(ekm::ruled_surface_c(d0, dinf, s, Rational(-1)) ==
              -(Rational(2 * (1 + dinf)) + s) / (Rational(2) * Rational(1 + dinf) * Rational(2 + dinf)));
    }
}

TEST_CASE("section-3.2 form equals the moment construction") {
    ekm::testutil::Rng rng(14);
    int tested = 0;
    while (tested < 60) {
        const int d0 = static_cast<int>(rng() % 4), dinf = static_cast<int>(rng() % 4);
        const Rational x = ekm::testutil::random_x(rng);
        const Rational s = ekm::testutil::random_rational(rng, -4.0, 4.0);
        if (!(s * x < Rational(2))) continue;
        ++tested;
        const Rational c = ekm::ruled_surface_c(d0, dinf, s, x);
        CHECK(c.sign() < 0);
        AdmissibleSetup setup;
        setup.d0 = d0;
        setup.dinf = dinf;
        setup.factors = {{1, x, s, std::nullopt}};
        const RatPoly expect =
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(1)), static_cast<unsigned>(d0 + 1)) *
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(-1)), static_cast<unsigned>(dinf + 1)) *
            (RatPoly::linear(Rational(1), x) + c * RatPoly{Rational(1), Rational(0), Rational(-1)});
        CHECK(ekm::extremal_polynomial(setup).F == expect);
    }
}

TEST_CASE("ruled surface flip threshold for s = -2") {
    const auto th = ekm::ruled_surface_threshold(0, 0, Rational(-2));
    REQUIRE(th.has_value());
    // root of 5x^4 + 12x^3 + 2x^2 - 12x - 3 in (0,1), around 0.9042
    CHECK(th->lo.to_double() > 0.90);
    CHECK(th->hi.to_double() < 0.91);
    // classify flips across it
    CHECK(ekm::extremal_exists(ekm::classify(single_curve(Rational(9, 10), Rational(-2))).kind));
    CHECK(!ekm::extremal_exists(ekm::classify(single_curve(Rational(91, 100), Rational(-2))).kind));
    // nonnegative curvature: no flip anywhere
    CHECK(!ekm::ruled_surface_threshold(0, 0, Rational(0)).has_value());
}

TEST_CASE("bundles over one curve with integral data never admit CSC metrics") {
    // s = p/q with p = 2(1 - genus) <= 2 and sign(q) = sign(x): the Futaki
    // invariant never vanishes, whatever the class parameter.
    ekm::testutil::Rng rng(113);
    for (int i = 0; i < 80; ++i) {
        const int d0 = static_cast<int>(rng() % 3), dinf = static_cast<int>(rng() % 3);
        const Rational x = ekm::testutil::random_x(rng);
        const int genus = static_cast<int>(rng() % 5);
        const long q = (1 + static_cast<long>(rng() % 4)) * x.sign();
        const Rational p(2L * (1 - genus));
        const Rational s = p / Rational(q);
        AdmissibleSetup setup;
        setup.d0 = d0;
        setup.dinf = dinf;
        setup.factors = {{1, x, s, ekm::IntegralityDatum{p, q}}};
        REQUIRE(ekm::validate(setup).empty());
        CHECK(ekm::extremal_polynomial(setup).futaki != Rational(0));
        CHECK(ekm::ruled_surface_c(d0, dinf, s, x).sign() < 0);
    }
}

TEST_CASE("curvature window with a blow-down: sharp at s = -d0(d0+1)") {
    // d0 = 1: extremal metrics in every class iff -2 <= s <= 0
    for (int i = 1; i < 25; ++i) {
        for (int sign : {1, -1}) {
            AdmissibleSetup boundary;
            boundary.d0 = 1;
            boundary.factors = {{1, Rational(sign * i, 25), Rational(-2), std::nullopt}};
            CHECK(ekm::extremal_exists(ekm::classify(boundary).kind));
        }
    }
    // s = -3 < -2: flips for positive x, never for negative x
    const auto th = ekm::ruled_surface_threshold(1, 0, Rational(-3));
    REQUIRE(th.has_value());
    CHECK(th->lo.to_double() > 0.5);
    CHECK(th->hi.to_double() < 1.0);
    CHECK(!ekm::ruled_surface_threshold(1, 0, Rational(-3), false).has_value());
    for (int i = 1; i < 25; ++i) {
        AdmissibleSetup neg;
        neg.d0 = 1;
        neg.factors = {{1, Rational(-i, 25), Rational(-3), std::nullopt}};
        CHECK(ekm::extremal_exists(ekm::classify(neg).kind));
    }
}

TEST_CASE("hodge 4-manifold coefficients and nonvanishing") {
    ekm::testutil::Rng rng(15);
    int tested = 0;
    while (tested < 40) {
        const int d0 = static_cast<int>(rng() % 3), dinf = static_cast<int>(rng() % 3);
        const Rational x = ekm::testutil::random_x(rng);
        const Rational s = ekm::testutil::random_rational(rng, -4.0, 4.0);
        if (!(s * x < Rational(3))) continue;
        ++tested;
        const auto h = ekm::hodge4_coefficients(d0, dinf, s, x); // asserts c = n/d internally
        CHECK(h.d.sign() > 0);
        CHECK(h.n.sign() != 0);
        // polynomial identity with the moment construction for a dim-2 factor
        AdmissibleSetup setup;
        setup.d0 = d0;
        setup.dinf = dinf;
        setup.factors = {{2, x, s, std::nullopt}};
        const RatPoly lin = RatPoly::linear(Rational(1), x);
        const RatPoly onemz2{Rational(1), Rational(0), Rational(-1)};
        const RatPoly expect =
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(1)), static_cast<unsigned>(d0 + 1)) *
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(-1)), static_cast<unsigned>(dinf + 1)) *
            (lin * lin + RatPoly{h.e, h.c} * onemz2);
        CHECK(ekm::extremal_polynomial(setup).F == expect);
    }
}

TEST_CASE("CSC system residuals") {
    const auto ks = ekm::csc_system_residuals(Rational(1, 2), Rational(-1, 2), Rational(1),
                                              Rational(2), Rational(-2));
    CHECK(ks.r1 == Rational(0));
    CHECK(ks.r2 == Rational(0));
    CHECK(ks.h == Rational(0));

    // x1 + x2 = 0 branch: s = (1 - x1^2 + 2 s1 x1)/(3 - x1^2)
    ekm::testutil::Rng rng(16);
    for (int i = 0; i < 30; ++i) {
        const Rational x1 = ekm::testutil::random_x(rng);
        const Rational s1 = ekm::testutil::random_rational(rng, -3.0, 3.0);
        const Rational s = (Rational(1) - x1 * x1 + Rational(2) * s1 * x1) / (Rational(3) - x1 * x1);
        const auto res = ekm::csc_system_residuals(x1, -x1, s, s1, -s1);
        CHECK(res.r1 == Rational(0));
        CHECK(res.r2 == Rational(0));
        CHECK(res.h == Rational(0));
    }

    // off the locus the residuals are nonzero
    const auto off = ekm::csc_system_residuals(Rational(1, 2), Rational(-1, 3), Rational(1),
                                               Rational(2), Rational(-2));
    CHECK((off.r1 != Rational(0) || off.r2 != Rational(0)));
}

TEST_CASE("two-curve products with definite class are never CSC") {
    // x1 x2 > 0 and s_a x_a < 2: hypersurface residual stays nonzero
    ekm::testutil::Rng rng(17);
    int tested = 0;
    while (tested < 60) {
        Rational x1 = ekm::testutil::random_x(rng).abs();
        Rational x2 = ekm::testutil::random_x(rng).abs();
        if (x1.is_zero() || x2.is_zero() || x1 == x2) continue;
        const Rational s1 = ekm::testutil::random_rational(rng, -4.0, 1.9);
        const Rational s2 = ekm::testutil::random_rational(rng, -4.0, 1.9);
        if (!(s1 * x1 < Rational(2)) || !(s2 * x2 < Rational(2))) continue;
        ++tested;
        const Rational s = ekm::csc_scalar_from_relation(x1, x2, s1);
        const auto res = ekm::csc_system_residuals(x1, x2, s, s1, s2);
        CHECK(res.h != Rational(0));
    }
}

TEST_CASE("csc locus scan over two spheres") {
    // q = 1: s = (2, -2); both branches x2 = -x1 and x1 = x2 + 1
    const auto q1 = ekm::csc_locus_scan(Rational(2), Rational(-2), 8);
    bool saw_opposite = false, saw_shifted = false;
    for (const auto& p : q1) {
        REQUIRE(p.exact);
        CHECK(p.r1 == Rational(0));
        CHECK(p.r2 == Rational(0));
        if (p.x2 == -p.x1) {
            saw_opposite = true;
            CHECK(p.confirmed_csc);
        }
        if (p.x1 == p.x2 + Rational(1)) {
            saw_shifted = true;
            CHECK(p.s == Rational(1));
        }
    }
    CHECK(saw_opposite);
    CHECK(saw_shifted);

    // q = 2: s = (1, -1); only the x1 + x2 = 0 branch
    const auto q2 = ekm::csc_locus_scan(Rational(1), Rational(-1), 8);
    CHECK(!q2.empty());
    for (const auto& p : q2) {
        CHECK(p.x2 == -p.x1);
        CHECK(p.confirmed_csc);
    }

    // two tori: x1 + x2 = 0 with s = (1 - x1^2)/(3 - x1^2) > 0
    const auto tori = ekm::csc_locus_scan(Rational(0), Rational(0), 8);
    CHECK(!tori.empty());
    for (const auto& p : tori) {
        CHECK(p.x2 == -p.x1);
        CHECK(p.s == (Rational(1) - p.x1 * p.x1) / (Rational(3) - p.x1 * p.x1));
        CHECK(p.s.sign() > 0);
        CHECK(p.confirmed_csc);
    }
}

TEST_CASE("zero scalar curvature intersections") {
    // torus x sphere-degree data: s1 = 0, s2 = 1
    const auto flat = ekm::zero_scalar_intersection(Rational(0), Rational(1), Rational(1, 100000));
    CHECK(flat.x1.sign() > 0);
    CHECK(flat.x1 < Rational(1));
    CHECK(flat.x2.sign() < 0);
    CHECK(Rational(-1) < flat.x2);
    CHECK(flat.r1.abs() < Rational(1, 1000));
    CHECK(flat.r2.abs() < Rational(1, 1000));

    const auto hyp = ekm::zero_scalar_intersection(Rational(-2), Rational(2), Rational(1, 100000));
    CHECK(hyp.r1.abs() < Rational(1, 1000));
    CHECK(hyp.r2.abs() < Rational(1, 1000));

    CHECK_THROWS_AS(ekm::zero_scalar_intersection(Rational(1), Rational(1), Rational(1, 1000)),
                    ekm::NoIntersectionFound);
}

TEST_CASE("degree-gap obstruction over a curve") {
    CHECK(ekm::rscase_obstruction(0, {0, 1}));
    CHECK(!ekm::rscase_obstruction(3, {0, 2}));  // gap 2 = g - 1, inconclusive
    CHECK(ekm::rscase_obstruction(2, {0, 2}));   // gap 2 > 1
    CHECK(!ekm::rscase_obstruction(0, {5, 5, 5}));
    CHECK(ekm::rscase_obstruction(1, {5, 6}));
    CHECK_THROWS_AS(ekm::rscase_obstruction(2, {}), ekm::OutOfRange);
}

TEST_CASE("destabilizing family: frozen data at the pinned point") {
    const auto fam = ekm::counterexample_family(Rational(1, 2), Rational(1, 4), Rational(2));
    CHECK(fam.x3 == Rational(-2, 3));
    CHECK(fam.mu == Rational(5, 32));
    const RatPoly quad{Rational(-1), Rational(2), Rational(1)};
    CHECK(fam.F == Rational(5, 32) * RatPoly{Rational(1), Rational(0), Rational(-1)} * quad * quad);
    REQUIRE(fam.certificate.count == 1);
    CHECK(fam.certificate.intervals.front().multiplicity_parity == Parity::Even);
    CHECK(ekm::classify(fam.setup).kind == VerdictKind::NoExtremalDoubleRoot);
    // this point misses the validity region (two s_a x_a are positive), so
    // the strict constructor refuses it
    CHECK(!fam.region_valid);
    CHECK_THROWS_AS(ekm::counterexample_setup(Rational(1, 2), Rational(1, 4), Rational(2)),
                    ekm::ConstraintViolated);
}

TEST_CASE("destabilizing family: a region-valid point") {
    const auto fam = ekm::counterexample_setup(Rational(9, 10), Rational(1, 2), Rational(2));
    CHECK(fam.region_valid);
    for (const auto& f : fam.setup.factors) CHECK((f.s * f.x).sign() < 0);
    // same double root sqrt(2) - 1 (it only depends on r)
    REQUIRE(fam.certificate.count == 1);
    const auto& iv = fam.certificate.intervals.front();
    CHECK(iv.multiplicity_parity == Parity::Even);
    CHECK(iv.lo.to_double() <= 0.414214);
    CHECK(iv.hi.to_double() >= 0.414213);
    CHECK(ekm::classify(fam.setup).kind == VerdictKind::NoExtremalDoubleRoot);
    // F is positive at every rational sample we try
    const RatPoly F = fam.F;
    for (int i = -99; i < 100; ++i) {
        if (i == 0) continue;
        CHECK(F(Rational(i, 100)).sign() > 0);
    }
    // invalid inputs
    CHECK_THROWS_AS(ekm::counterexample_family(Rational(1, 4), Rational(1, 2), Rational(2)),
                    ekm::ConstraintViolated);
    CHECK_THROWS_AS(ekm::counterexample_family(Rational(1, 2), Rational(1, 4), Rational(3, 2)),
                    ekm::ConstraintViolated);
}

TEST_CASE("nonnegative-base classes always carry an extremal metric") {
    ekm::testutil::Rng rng(18);
    for (int i = 0; i < 120; ++i) {
        const AdmissibleSetup s = ekm::testutil::random_nonneg_setup(rng);
        CHECK_NOTHROW(ekm::nonneg_base_fastpath(s));
    }
    // precondition violation is rejected, not asserted
    CHECK_THROWS_AS(ekm::nonneg_base_fastpath(single_curve(Rational(1, 2), Rational(-2))),
                    ekm::OutOfRange);
}

TEST_CASE("deflation identity on random setups") {
    ekm::testutil::Rng rng(19);
    for (int i = 0; i < 60; ++i) {
        const AdmissibleSetup s = ekm::testutil::random_setup(rng);
        const Verdict v = ekm::classify(s);
        const RatPoly deflator =
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(1)), static_cast<unsigned>(s.d0 + 1)) *
            ekm::poly_pow(RatPoly::linear(Rational(1), Rational(-1)), static_cast<unsigned>(s.dinf + 1));
        CHECK(v.quotient * deflator == v.solution.F);
        CHECK(v.quotient(Rational(1)).sign() > 0);
        CHECK(v.quotient(Rational(-1)).sign() > 0);
        if (ekm::extremal_exists(v.kind))
            CHECK((v.kind == VerdictKind::ExtremalCSC) == v.solution.A.is_zero());
    }
}
