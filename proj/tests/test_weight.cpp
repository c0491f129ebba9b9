#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "freud/quadrature.hpp"
#include "freud/weight.hpp"

using namespace freud;

namespace {
constexpr double kPi = std::numbers::pi;

// Semicircle closed forms for lambda = 2.
double semicircle_density(double s) {
    return 2.0 / kPi * std::sqrt(std::max(0.0, 1.0 - s * s));
}

double semicircle_mass(double a, double b) {
    auto prim = [](double s) {
        return (s * std::sqrt(1.0 - s * s) + std::asin(s)) / kPi;
    };
    return prim(b) - prim(a);
}
}  // namespace

TEST_CASE("FreudWeight construction and basic identities") {
    CHECK_THROWS_AS(FreudWeight(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(FreudWeight(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(FreudWeight(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FreudWeight(1.0, 0.5), std::invalid_argument);

    FreudWeight w(0.5, 2.0);
    for (double x : {0.0, 0.3, 1.7, 4.0}) {
        CHECK(w.value(x) == doctest::Approx(std::exp(-0.5 * x * x)).epsilon(1e-15));
        CHECK(w.value(x) == w.value(-x));  // evenness
    }
    // Q'(x) = c lambda sign(x) |x|^{lambda-1}
    FreudWeight w4(1.0, 4.0);
    CHECK(w4.potential_derivative(2.0) == doctest::Approx(32.0));
    CHECK(w4.potential_derivative(-2.0) == doctest::Approx(-32.0));
    CHECK(w4.potential_derivative(0.0) == 0.0);
}

TEST_CASE("gamma_lambda hand values") {
    CHECK(gamma_lambda(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_lambda(4.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(gamma_lambda(3.0) == doctest::Approx(kPi / 4.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_lambda(1.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_lambda(0.5), std::invalid_argument);
}

TEST_CASE("MRS numbers") {
    FreudWeight hermite(0.5, 2.0);
    CHECK(mrs_number(hermite, 50) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(mrs_number(hermite, 2) == doctest::Approx(2.0).epsilon(1e-13));
    FreudWeight quartic(1.0, 4.0);
    CHECK(mrs_number(quartic, 1) ==
          doctest::Approx(std::pow(2.0 / 3.0, 0.25)).epsilon(1e-13));
    CHECK_THROWS_AS(mrs_number(hermite, 0), std::invalid_argument);

    SUBCASE("strictly increasing in n and 2^{1/lambda} scaling") {
        for (double lambda : {1.5, 2.0, 3.0, 4.0}) {
            FreudWeight w(0.7, lambda);
            double prev = 0.0;
            for (int n = 1; n <= 64; ++n) {
                double an = mrs_number(w, n);
                CHECK(an > prev);
                prev = an;
            }
            for (int n : {1, 5, 12, 50}) {
                CHECK(mrs_number(w, 2 * n) / mrs_number(w, n) ==
                      doctest::Approx(std::pow(2.0, 1.0 / lambda))
                          .epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("Ullman density closed forms and edge cases") {
    CHECK(ullman_density(2.0, 0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(ullman_density(4.0, 0.0) ==
          doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-12));
    for (double lambda : {1.5, 2.0, 3.0, 6.0}) {
        CHECK(ullman_density(lambda, 1.0) == 0.0);
        CHECK(ullman_density(lambda, -1.0) == 0.0);
    }
    CHECK_THROWS_AS(ullman_density(2.0, 1.0001), std::domain_error);
}

TEST_CASE("Ullman density matches the semicircle for lambda = 2") {
    for (int i = 0; i <= 1000; ++i) {
        double s = -1.0 + 2.0 * i / 1000.0;
        CHECK(std::abs(ullman_density(2.0, s) - semicircle_density(s)) < 1e-9);
    }
}

TEST_CASE("Ullman density is even and nonnegative") {
    for (double lambda : {1.5, 2.0, 3.0, 4.0, 6.0}) {
        for (int i = 0; i <= 100; ++i) {
            double s = i / 100.0;
            double d = ullman_density(lambda, s);
            CHECK(d >= 0.0);
            CHECK(d == doctest::Approx(ullman_density(lambda, -s)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Ullman measure: normalization, symmetry, additivity") {
    for (double lambda : {1.5, 2.0, 3.0, 4.0, 6.0}) {
        CHECK(std::abs(ullman_measure(lambda, -1.0, 1.0) - 1.0) < 1e-9);
        CHECK(ullman_measure(lambda, 0.0, 1.0) ==
              doctest::Approx(0.5).epsilon(1e-9));
    }
    // analytic antiderivative of the semicircle
    CHECK(ullman_measure(2.0, -0.5, 0.5) ==
          doctest::Approx(semicircle_mass(-0.5, 0.5)).epsilon(1e-10));
    CHECK(semicircle_mass(-0.5, 0.5) ==
          doctest::Approx(std::sqrt(3.0) / (2.0 * kPi) + 1.0 / 3.0)
              .epsilon(1e-14));

    SUBCASE("clipping outside the support") {
        CHECK(ullman_measure(2.0, -5.0, 5.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(ullman_measure(2.0, 1.5, 2.0) == 0.0);
    }
    SUBCASE("additivity over disjoint intervals") {
        double whole = ullman_measure(3.0, -0.8, 0.9);
        double split = ullman_measure(3.0, -0.8, 0.1) +
                       ullman_measure(3.0, 0.1, 0.9);
        CHECK(whole == doctest::Approx(split).epsilon(1e-11));
    }
    CHECK_THROWS_AS(ullman_measure(2.0, 0.5, -0.5), std::invalid_argument);
}

TEST_CASE("equilibrium density: contraction identity, mass, example") {
    FreudWeight hermite(0.5, 2.0);
    // sigma_n(a_n s) (a_n/n) = ullman_density(lambda, s)
    for (double s : {-0.9, -0.4, 0.0, 0.3, 0.99}) {
        for (int n : {3, 50}) {
            double an = mrs_number(hermite, n);
            CHECK(equilibrium_density(hermite, n, an * s) * an / n ==
                  doctest::Approx(ullman_density(2.0, s)).epsilon(1e-12));
        }
    }
    CHECK(equilibrium_density(hermite, 50, 0.0) ==
          doctest::Approx(50.0 / 10.0 * 2.0 / kPi).epsilon(1e-12));
    CHECK_THROWS_AS(equilibrium_density(hermite, 50, 10.1), std::domain_error);

    SUBCASE("total mass n within 1e-6 n") {
        for (double lambda : {2.0, 4.0}) {
            FreudWeight w(lambda == 2.0 ? 0.5 : 1.0, lambda);
            for (int n : {10, 100}) {
                double an = mrs_number(w, n);
                QuadratureOptions opts;
                opts.abs_tol = 1e-8 * n;
                double mass =
                    integrate_adaptive(
                        [&](double x) { return equilibrium_density(w, n, x); },
                        -an, an, opts)
                        .value;
                CHECK(std::abs(mass - n) < 1e-6 * n);
            }
        }
    }
}

TEST_CASE("field ratio and its n-independent bound") {
    FreudWeight hermite(0.5, 2.0);
    CHECK(field_ratio_bound(hermite, 0.5) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK_THROWS_AS(field_ratio_bound(hermite, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(field_ratio_bound(hermite, 1.0), std::invalid_argument);

    // worked example: lambda=2, c=1/2, n=49, x=5 (x / a_50 = 0.5)
    CHECK(field_ratio(hermite, 49, 5.0) ==
          doctest::Approx(5.0 / (5.0 * (2.0 / kPi) * std::sqrt(0.75)))
              .epsilon(1e-12));
    CHECK(field_ratio(hermite, 49, 5.0) <= kPi);
    CHECK(field_ratio(hermite, 7, 0.0) == 0.0);

    SUBCASE("|field_ratio| <= bound on (1-eps) * MRS interval") {
        for (double lambda : {1.5, 2.0, 4.0}) {
            FreudWeight w(0.8, lambda);
            for (int n : {10, 100}) {
                double an1 = mrs_number(w, n + 1);
                for (double eps : {0.1, 0.5}) {
                    double bound = field_ratio_bound(w, eps);
                    for (int i = -40; i <= 40; ++i) {
                        double x = (1.0 - eps) * an1 * i / 40.0;
                        CHECK(std::abs(field_ratio(w, n, x)) <=
                              bound * (1.0 + 1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("Robin constant") {
    CHECK(robin_constant(2.0) ==
          doctest::Approx(std::log(2.0) + 0.5).epsilon(1e-15));
    CHECK(robin_constant(4.0) ==
          doctest::Approx(std::log(2.0) + 0.25).epsilon(1e-15));
    CHECK(std::exp(-robin_constant(2.0)) ==
          doctest::Approx(0.303265).epsilon(1e-6));
    CHECK_THROWS_AS(robin_constant(1.0), std::invalid_argument);
}

TEST_CASE("UllmanDistribution CDF") {
    UllmanDistribution mu(2.0);
    CHECK(mu.cdf(-1.0) == 0.0);
    CHECK(mu.cdf(1.0) == 1.0);
    CHECK(mu.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(mu.cdf(-2.0) == 0.0);
    CHECK(mu.cdf(2.0) == 1.0);
    // against the analytic semicircle CDF
    for (double s : {-0.9, -0.5, -0.1, 0.2, 0.7, 0.95}) {
        CHECK(mu.cdf(s) ==
              doctest::Approx(semicircle_mass(-1.0, s)).epsilon(1e-5));
    }
    SUBCASE("nondecreasing") {
        UllmanDistribution mu4(4.0);
        double prev = -1.0;
        for (int i = 0; i <= 400; ++i) {
            double s = -1.0 + 2.0 * i / 400.0;
            double f = mu4.cdf(s);
            CHECK(f >= prev);
            prev = f;
        }
    }
}
