#include "freud/kacrice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "freud/errors.hpp"
#include "freud/quadrature.hpp"

namespace freud {

namespace {
constexpr double kPi = std::numbers::pi;
}

BasisEvaluator::BasisEvaluator(int degree, EvalFn eval)
    : degree_(degree), eval_(std::move(eval)) {
    if (degree_ < 0) {
        throw std::invalid_argument("BasisEvaluator: degree must be >= 0");
    }
    if (!eval_) {
        throw std::invalid_argument("BasisEvaluator: empty evaluator");
    }
}

BasisEvaluator BasisEvaluator::monomial(int degree) {
    return BasisEvaluator(
        degree, [degree](double x, Eigen::VectorXd& v, Eigen::VectorXd& d) {
            v.resize(degree + 1);
            d.resize(degree + 1);
            v[0] = 1.0;
            d[0] = 0.0;
            long exponent = 0;
            for (int j = 1; j <= degree; ++j) {
                v[j] = v[j - 1] * x;
                d[j] = j == 1 ? 1.0 : v[j - 1] * j;
                double m = std::max(std::abs(v[j]), std::abs(d[j]));
                if (m > 0x1p200) {
                    int ex = 0;
                    std::frexp(m, &ex);
                    double scale = std::ldexp(1.0, -ex);
                    v.head(j + 1) *= scale;
                    d.head(j + 1) *= scale;
                    exponent += ex;
                }
            }
            return exponent;
        });
}

BasisEvaluator BasisEvaluator::orthonormal(const RecurrenceTable& table,
                                           int degree) {
    if (degree > table.n_max()) {
        throw std::invalid_argument(
            "BasisEvaluator::orthonormal: degree exceeds table capacity");
    }
    return BasisEvaluator(
        degree, [table, degree](double x, Eigen::VectorXd& v, Eigen::VectorXd& d) {
            ScaledBasisEval e = eval_basis_scaled(table, degree, x);
            v = std::move(e.values);
            d = std::move(e.derivatives);
            return e.log2_scale;
        });
}

double intensity(const BasisEvaluator& basis, double x) {
    thread_local Eigen::VectorXd v, d;
    basis(x, v, d);
    const double a = v.squaredNorm();
    const double b = v.dot(d);
    const double c = d.squaredNorm();
    const double disc = a * c - b * b;
    if (disc <= 0.0) return 0.0;
    return std::sqrt(disc) / (kPi * a);
}

double expected_zeros(const BasisEvaluator& basis, double a, double b,
                      const ExpectedZerosOptions& opts) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("expected_zeros: requires finite a < b");
    }
    QuadratureOptions qopts;
    qopts.abs_tol = opts.abs_tol;
    qopts.breakpoints = opts.breakpoints;
    return integrate_adaptive(
               [&basis](double x) { return intensity(basis, x); }, a, b, qopts)
        .value;
}

namespace {

// Full-line expected count at truncation T: bulk plus the two inverted tails
// Integral_T^inf rho = Integral_0^1 rho(T/u) T/u^2 du (and mirrored).
double realline_estimate(const BasisEvaluator& basis, double edge, double T,
                         double edge_width) {
    ExpectedZerosOptions bulk_opts;
    bulk_opts.abs_tol = 5e-9;
    for (double s : {-1.0, 1.0}) {
        bulk_opts.breakpoints.push_back(s * edge * (1.0 - edge_width));
        bulk_opts.breakpoints.push_back(s * edge * (1.0 + edge_width));
    }
    bulk_opts.breakpoints.push_back(0.0);
    double bulk = expected_zeros(basis, -T, T, bulk_opts);

    QuadratureOptions tail_opts;
    tail_opts.abs_tol = 2.5e-9;
    auto tail = [&](double sign) {
        return integrate_adaptive(
                   [&](double u) {
                       double x = sign * T / u;
                       return intensity(basis, x) * T / (u * u);
                   },
                   0.0, 1.0, tail_opts)
            .value;
    };
    return bulk + tail(1.0) + tail(-1.0);
}

}  // namespace

double expected_zeros_realline(const FreudWeight& w, const RecurrenceTable& table,
                               int n) {
    if (n < 1 || n > table.n_max()) {
        throw std::invalid_argument("expected_zeros_realline: n out of range");
    }
    BasisEvaluator basis = BasisEvaluator::orthonormal(table, n);
    const double edge = mrs_number(w, n + 1);
    const double edge_width = std::pow(double(n), -2.0 / 3.0);

    double T = 2.0 * edge;
    double prev = realline_estimate(basis, edge, T, edge_width);
    for (int ext = 0; ext < 4; ++ext) {
        T *= 1.5;
        double next = realline_estimate(basis, edge, T, edge_width);
        double marginal = std::abs(next - prev);
        if (marginal < 1e-6) {
            return next;
        }
        prev = next;
    }
    std::ostringstream msg;
    msg << "expected_zeros_realline: tail not stabilized after 4 extensions "
           "(n = "
        << n << ", last T = " << T << ")";
    throw NumericError(msg.str());
}

double expected_zeros_scaled(const FreudWeight& w, const RecurrenceTable& table,
                             int n, double a, double b) {
    if (!(-1.0 < a && a < b && b < 1.0)) {
        throw std::invalid_argument(
            "expected_zeros_scaled: requires -1 < a < b < 1");
    }
    if (n < 1 || n > table.n_max()) {
        throw std::invalid_argument("expected_zeros_scaled: n out of range");
    }
    BasisEvaluator basis = BasisEvaluator::orthonormal(table, n);
    const double an1 = mrs_number(w, n + 1);
    ExpectedZerosOptions opts;
    opts.breakpoints = {0.0};
    return expected_zeros(basis, an1 * a, an1 * b, opts);
}

void IntensityProfile::write_csv(std::ostream& out) const {
    out << "x,rho\n";
    char line[80];
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", grid[i], rho[i]);
        out << line;
    }
}

IntensityProfile intensity_profile(const BasisEvaluator& basis, double a,
                                   double b, int points) {
    if (points < 2 || !(a < b)) {
        throw std::invalid_argument("intensity_profile: bad grid request");
    }
    IntensityProfile prof;
    prof.n = basis.degree();
    prof.grid = Eigen::ArrayXd::LinSpaced(points, a, b);
    prof.rho.resize(points);
    for (int i = 0; i < points; ++i) {
        prof.rho[i] = intensity(basis, prof.grid[i]);
    }
    return prof;
}

}  // namespace freud
