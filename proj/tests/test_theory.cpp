#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plab/theory.hpp"

using namespace plab;

TEST_CASE("symmetric skew-Bessel triple gives the integrated-Brownian bundle") {
    ExponentBundle b = skew_bessel_params({1.0, 0.0, 1.0, 1.0, 1.0});
    CHECK(b.beta == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(b.vartheta == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b.rho == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.theta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(*b.alpha_rho == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("symmetry forces rho = 1/2 whenever eta = 0 and c+ = c-") {
    for (double delta : {0.3, 1.0, 1.7})
        for (double gamma : {0.5, 1.0, 3.0}) {
            ExponentBundle b = skew_bessel_params({delta, 0.0, gamma, 2.5, 2.5});
            CHECK(b.vartheta == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(b.rho == doctest::Approx(0.5).epsilon(1e-14));
        }
}

TEST_CASE("asymmetric weights (1, 8): frozen high-precision values") {
    ExponentBundle b = skew_bessel_params({1.0, 0.0, 1.0, 1.0, 8.0});
    CHECK(b.vartheta == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    // oracle: 40-digit evaluation of 1/2 + arctan(vt*tan(pi a/2))/(pi a)
    CHECK(b.rho == doctest::Approx(0.3184434225144849066).epsilon(1e-13));
    CHECK(b.theta == doctest::Approx(0.1592217112572424533).epsilon(1e-13));
}

TEST_CASE("stable_rho skewness form") {
    for (double a : {0.2, 0.5, 0.9, 1.5})
        CHECK(stable_rho(RhoParameterization::skewness, a, 0.0) ==
              doctest::Approx(0.5).epsilon(1e-14));
    // vartheta = 1, alpha < 1: arctan(tan(pi a/2)) collapses to pi a/2
    for (double a : {0.2, 0.5, 0.9})
        CHECK(stable_rho(RhoParameterization::skewness, a, 1.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
    // frozen oracle for (1/3, 1/2)
    CHECK(stable_rho(RhoParameterization::skewness, 1.0 / 3.0, 0.5) ==
          doctest::Approx(0.7683685625331002547).epsilon(1e-13));
}

TEST_CASE("stable_rho rejects the skewness form at alpha = 1") {
    CHECK_THROWS_AS(stable_rho(RhoParameterization::skewness, 1.0, 0.3), TheoryError);
}

TEST_CASE("stable_rho raw-tails form and the alpha = 1 drift case") {
    // (f+, f-) = (1, 8) at alpha = 1/3 must agree with the skew form at
    // vartheta = -1/3: the bridge between the two parameterizations
    double raw = stable_rho(RhoParameterization::raw_tails, 1.0 / 3.0, 1.0, 8.0);
    double skew = stable_rho(RhoParameterization::skewness, 1.0 / 3.0, -1.0 / 3.0);
    CHECK(raw == doctest::Approx(skew).epsilon(1e-13));
    // drift 0 at alpha = 1 is symmetric
    CHECK(stable_rho(RhoParameterization::raw_tails, 1.0, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // rho = 1/2 + arctan(c)/pi
    CHECK(stable_rho(RhoParameterization::raw_tails, 1.0, 1.0) ==
          doctest::Approx(0.5 + std::atan(1.0) / M_PI).epsilon(1e-13));
}

TEST_CASE("family bundles") {
    ExponentBundle ou = family_exponents("ou");
    CHECK(ou.beta == 1.0);
    CHECK(ou.rho == 0.5);
    CHECK(ou.theta == 0.5);

    ExponentBundle bw = family_exponents("bessel_walk", 0.4);
    CHECK(bw.beta == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(bw.theta == doctest::Approx(0.35).epsilon(1e-14));

    ExponentBundle srw = family_exponents("bessel_walk", 0.0);
    CHECK(srw.theta == doctest::Approx(0.25).epsilon(1e-14));

    ExponentBundle kfp = family_exponents("kinetic_fp", 0.5);
    CHECK(kfp.beta == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(kfp.alpha == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kfp.theta == doctest::Approx(0.375).epsilon(1e-14));

    ExponentBundle isrw = family_exponents("integrated_srw");
    CHECK(isrw.theta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(*isrw.alpha_rho == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("family parameter rejection points at the other recurrence branch") {
    CHECK_THROWS_AS(family_exponents("bessel_walk", 1.2), TheoryError);
    CHECK_THROWS_AS(family_exponents("bessel_walk", -1.0), TheoryError);
    CHECK_THROWS_AS(family_exponents("kinetic_fp", -1.5), TheoryError);
    CHECK_THROWS_AS(family_exponents("no_such_family"), TheoryError);
    CHECK_THROWS_AS(skew_bessel_params({2.5, 0.0, 1.0, 1.0, 1.0}), TheoryError);
    CHECK_THROWS_AS(skew_bessel_params({1.0, 0.0, -1.5, 1.0, 1.0}), TheoryError);
}

TEST_CASE("sign-flip symmetry rho(a, -vt) = 1 - rho(a, vt)") {
    for (double a : {0.3, 0.5, 0.8, 1.4})
        for (double vt : {0.1, 0.4, 0.9}) {
            double p = stable_rho(RhoParameterization::skewness, a, vt);
            double m = stable_rho(RhoParameterization::skewness, a, -vt);
            CHECK(p + m == doctest::Approx(1.0).epsilon(1e-13));
        }
}

TEST_CASE("theta = beta * rho and rho monotone in vartheta") {
    for (double delta : {0.5, 1.0, 1.5})
        for (double cm : {0.5, 1.0, 4.0}) {
            ExponentBundle b = skew_bessel_params({delta, 0.2, 1.0, 1.0, cm});
            CHECK(b.theta == doctest::Approx(b.beta * b.rho).epsilon(1e-14));
            CHECK(b.rho >= 0.0);
            CHECK(b.rho <= 1.0);
        }
    // tan(pi a / 2) changes sign at a = 1, so positivity grows with the
    // skewness below it and shrinks above it
    for (double a : {0.3, 0.7, 1.6}) {
        double prev = a < 1.0 ? -1.0 : 2.0;
        for (double vt = -1.0; vt <= 1.0001; vt += 0.125) {
            double r = stable_rho(RhoParameterization::skewness, a, std::min(vt, 1.0));
            if (a < 1.0)
                CHECK(r > prev);
            else
                CHECK(r < prev);
            prev = r;
        }
    }
}

TEST_CASE("continuity across the walk recurrence boundary") {
    for (double eps : {0.1, 0.01, 0.001}) {
        ExponentBundle b = family_exponents("bessel_walk", 1.0 - eps);
        CHECK(std::abs(b.theta - 0.5) <= eps / 4.0 + 1e-12);
    }
}
