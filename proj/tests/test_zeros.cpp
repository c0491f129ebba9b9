#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <sstream>

#include "freud/montecarlo.hpp"
#include "freud/recurrence.hpp"
#include "freud/zeros.hpp"

using namespace freud;

namespace {

RecurrenceTable hermite_table(int n_max) {
    return compute_recurrence(FreudWeight(0.5, 2.0), n_max);
}

// Jacobi-eigenvalue oracle: zeros of p_n are the eigenvalues of the pure
// tridiagonal J_n, computed through the symmetric solver.
Eigen::VectorXd jacobi_zeros(const RecurrenceTable& t, int n) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd subdiag(n - 1);
    for (int k = 1; k < n; ++k) subdiag[k - 1] = t.a(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Eigen::VectorXd unit_coeffs(int n) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c[n] = 1.0;
    return c;
}

}  // namespace

TEST_CASE("comrade matrix of e_n is the Jacobi matrix") {
    RecurrenceTable t = hermite_table(12);
    const int n = 8;
    Eigen::MatrixXd m = comrade_matrix<double>(unit_coeffs(n), t);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double expect = 0.0;
            if (std::abs(i - j) == 1) expect = t.a(std::min(i, j) + 1);
            CHECK(m(i, j) == expect);
        }
    }
}

TEST_CASE("comrade matrix 1x1 solves the linear polynomial exactly") {
    RecurrenceTable t = hermite_table(4);
    Eigen::VectorXd c(2);
    c << 0.7, -1.3;
    Eigen::MatrixXd m = comrade_matrix<double>(c, t);
    // exact root of c_0 p_0 + c_1 gamma_1 x: -c_0 p_0 / (c_1 gamma_1)
    double expect = -c[0] * t.leading(0) / (c[1] * t.leading(1));
    CHECK(m(0, 0) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(m(0, 0) == doctest::Approx(-c[0] * t.a(1) / c[1]).epsilon(1e-15));
}

TEST_CASE("comrade matrix rejects degree deficiency") {
    RecurrenceTable t = hermite_table(4);
    Eigen::VectorXd c(3);
    c << 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(comrade_matrix<double>(c, t), std::invalid_argument);
}

TEST_CASE("all_zeros: count, conjugate pairing, residuals") {
    RecurrenceTable t = hermite_table(64);
    CoefficientDistribution gaussian;
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 20;
        Eigen::VectorXd c =
            sample_coefficients(gaussian, n, derive_seed(11, rep)).real_values();
        ZeroSet zs = all_zeros(c, t);
        CHECK(zs.n == n);
        CHECK(zs.zeros.size() == n);

        // conjugate pairing within 1e-9
        std::vector<bool> used(n, false);
        for (int i = 0; i < n; ++i) {
            if (std::abs(zs.zeros[i].imag()) < 1e-12 || used[i]) continue;
            bool found = false;
            for (int j = 0; j < n; ++j) {
                if (j == i || used[j]) continue;
                if (std::abs(zs.zeros[j] - std::conj(zs.zeros[i])) < 1e-9) {
                    used[i] = used[j] = true;
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }

        // residual oracle |P(z)| <= 1e-7 max|c_k| max|p_k(z)|
        for (int i = 0; i < n; ++i) {
            BasisEval<std::complex<double>> e =
                eval_basis<std::complex<double>>(t, n, zs.zeros[i]);
            std::complex<double> p = 0.0;
            double pmax = 0.0;
            for (int k = 0; k <= n; ++k) {
                p += c[k] * e.values[k];
                pmax = std::max(pmax, std::abs(e.values[k]));
            }
            CHECK(std::abs(p) <= 1e-7 * c.cwiseAbs().maxCoeff() * pmax);
        }
    }
}

TEST_CASE("residual bounds hold across sizes") {
    RecurrenceTable t = hermite_table(128);
    CoefficientDistribution gaussian;
    for (int n : {10, 50, 100}) {
        Eigen::VectorXd c =
            sample_coefficients(gaussian, n, derive_seed(29, n)).real_values();
        ZeroSet zs = all_zeros(c, t);
        double cmax = c.cwiseAbs().maxCoeff();
        for (int i = 0; i < n; ++i) {
            BasisEval<std::complex<double>> e =
                eval_basis<std::complex<double>>(t, n, zs.zeros[i]);
            std::complex<double> p = 0.0;
            double pmax = 0.0;
            for (int k = 0; k <= n; ++k) {
                p += c[k] * e.values[k];
                pmax = std::max(pmax, std::abs(e.values[k]));
            }
            CHECK(std::abs(p) <= 1e-7 * cmax * pmax);
        }
    }
}

TEST_CASE("n = 2 zeros match the quadratic formula") {
    RecurrenceTable t = hermite_table(8);
    CoefficientDistribution gaussian;
    for (int rep = 0; rep < 12; ++rep) {
        Eigen::VectorXd c =
            sample_coefficients(gaussian, 2, derive_seed(3, rep)).real_values();
        // monomial expansion: p_0 = g0, p_1 = g1 x,
        // p_2 = (gamma_1 x^2 - a_1 g0) / a_2
        double g0 = t.leading(0), g1 = t.leading(1);
        double alpha = c[2] * g1 / t.a(2);
        double beta = c[1] * g1;
        double gamma = c[0] * g0 - c[2] * t.a(1) * g0 / t.a(2);
        std::complex<double> disc =
            std::sqrt(std::complex<double>(beta * beta - 4 * alpha * gamma));
        std::complex<double> r1 = (-beta + disc) / (2.0 * alpha);
        std::complex<double> r2 = (-beta - disc) / (2.0 * alpha);
        // order like all_zeros: (Re, Im) lexicographic
        if (r1.real() > r2.real() ||
            (r1.real() == r2.real() && r1.imag() > r2.imag())) {
            std::swap(r1, r2);
        }

        ZeroSet zs = all_zeros(c, t);
        CHECK(std::abs(zs.zeros[0] - r1) < 1e-8);
        CHECK(std::abs(zs.zeros[1] - r2) < 1e-8);
    }
}

TEST_CASE("pure p_n zeros agree with the Jacobi-eigenvalue oracle") {
    RecurrenceTable t = hermite_table(40);
    const int n = 30;
    ZeroSet zs = all_zeros(unit_coeffs(n), t);
    Eigen::VectorXd oracle = jacobi_zeros(t, n);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(zs.zeros[i].imag()) < 1e-9);
        CHECK(std::abs(zs.zeros[i].real() - oracle[i]) < 1e-9);
    }
}

TEST_CASE("Newton polish keeps zeros in place") {
    RecurrenceTable t = hermite_table(32);
    CoefficientDistribution gaussian;
    Eigen::VectorXd c =
        sample_coefficients(gaussian, 24, derive_seed(17, 0)).real_values();
    ZeroSet plain = all_zeros(c, t, false);
    ZeroSet polished = all_zeros(c, t, true);
    for (int i = 0; i < 24; ++i) {
        CHECK(std::abs(plain.zeros[i] - polished.zeros[i]) < 1e-7);
    }
}

TEST_CASE("complex coefficient draws") {
    RecurrenceTable t = hermite_table(24);
    CoefficientDistribution cg;
    cg.kind = DistKind::ComplexGaussian;
    CoefficientVector cv = sample_coefficients(cg, 16, 99);
    CHECK_FALSE(cv.is_real);
    ZeroSet zs = all_zeros(cv, t);
    CHECK(zs.zeros.size() == 16);
    // residuals against the complex evaluation oracle
    for (int i = 0; i < 16; ++i) {
        BasisEval<std::complex<double>> e =
            eval_basis<std::complex<double>>(t, 16, zs.zeros[i]);
        std::complex<double> p = 0.0;
        double pmax = 0.0;
        for (int k = 0; k <= 16; ++k) {
            p += cv.values[k] * e.values[k];
            pmax = std::max(pmax, std::abs(e.values[k]));
        }
        CHECK(std::abs(p) <= 1e-7 * cv.values.cwiseAbs().maxCoeff() * pmax);
    }
}

TEST_CASE("real_zero_count: linear case") {
    RecurrenceTable t = hermite_table(4);
    RealZeroCount rc = real_zero_count(unit_coeffs(1), t, -1.0, 1.0);
    CHECK(rc.count == 1);
    REQUIRE(rc.locations.size() == 1);
    CHECK(std::abs(rc.locations[0]) < 1e-9);
}

TEST_CASE("real_zero_count matches the Jacobi oracle for pure p_30") {
    RecurrenceTable t = hermite_table(40);
    const int n = 30;
    Eigen::VectorXd oracle = jacobi_zeros(t, n);
    double bound = 1.1 * mrs_number(t.weight(), n);
    RealZeroCount rc = real_zero_count(unit_coeffs(n), t, -bound, bound);
    REQUIRE(rc.count == n);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(rc.locations[i] - oracle[i]) < 1e-8);
    }
}

TEST_CASE("sign scan agrees with comrade eigenvalues across 100 seeded draws") {
    RecurrenceTable t = hermite_table(64);
    const int n = 50;
    FreudWeight w = t.weight();
    const double bound = 2.0 * mrs_number(w, n + 1);
    ScanGrid grid = make_scan_grid(w, n, -bound, bound);
    CoefficientDistribution gaussian;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd c =
            sample_coefficients(gaussian, n, derive_seed(1234, trial))
                .real_values();
        RealZeroCount rc = real_zero_count(c, t, grid);
        ZeroSet zs = all_zeros(c, t);
        int eig_count = 0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(zs.zeros[i].imag()) < 1e-8 &&
                std::abs(zs.zeros[i].real()) <= bound) {
                ++eig_count;
            }
        }
        CHECK(rc.count == eig_count);
        CHECK(rc.count <= n);
        CHECK((n - rc.count) % 2 == 0);
    }
}

TEST_CASE("counting measure basics") {
    RecurrenceTable t = hermite_table(60);
    const int n = 50;
    ZeroSet zs = all_zeros(unit_coeffs(n), t);
    EmpiricalMeasure m = counting_measure(zs);
    CHECK(m.total_mass() == 1.0);
    // all scaled zeros inside a big disk: complement has zero mass
    CHECK(m.rectangle_mass(-10.0, 10.0, -10.0, 10.0) == 1.0);
    // zeros of p_n / a_n stay in [-1, 1] up to 1e-6
    CHECK(m.rectangle_mass(-1.0 - 1e-6, 1.0 + 1e-6, -1e-9, 1e-9) == 1.0);
    CHECK(m.real_cdf(0.0) == doctest::Approx(0.5));
    CHECK(m.real_cdf(2.0) == 1.0);
    CHECK(m.interval_mass(-1.0, 1.0, 1e-9) == 1.0);
}

TEST_CASE("scaled-zero confinement improves with n") {
    RecurrenceTable t = hermite_table(110);
    CoefficientDistribution gaussian;
    double prev_outside = 1.0;
    for (int n : {25, 50, 100}) {
        double outside_total = 0.0;
        const int trials = 40;
        for (int trial = 0; trial < trials; ++trial) {
            Eigen::VectorXd c =
                sample_coefficients(gaussian, n, derive_seed(555, trial))
                    .real_values();
            EmpiricalMeasure m = counting_measure(all_zeros(c, t));
            outside_total += 1.0 - m.rectangle_mass(-1.1, 1.1, -0.1, 0.1);
        }
        double outside = outside_total / trials;
        CHECK(outside < prev_outside);
        prev_outside = outside;
    }
}

TEST_CASE("symmetric tridiagonal path agrees with the Hessenberg path") {
    RecurrenceTable t = hermite_table(40);
    const int n = 32;
    ZeroSet via_comrade = all_zeros(unit_coeffs(n), t);
    Eigen::VectorXd via_tridiag = jacobi_zeros(t, n);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(via_comrade.zeros[i].real() - via_tridiag[i]) < 1e-9);
        CHECK(std::abs(via_comrade.zeros[i].imag()) < 1e-9);
    }
}

TEST_CASE("ZeroSet CSV layout") {
    RecurrenceTable t = hermite_table(8);
    ZeroSet zs = all_zeros(unit_coeffs(4), t);
    std::ostringstream csv;
    zs.write_csv(csv);
    std::string text = csv.str();
    CHECK(text.substr(0, 30) == "re,im,re_scaled,im_scaled\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
