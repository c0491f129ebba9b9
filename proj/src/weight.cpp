#include "freud/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "freud/quadrature.hpp"
#include "freud/special.hpp"

namespace freud {

namespace {
constexpr double kPi = std::numbers::pi;
}

FreudWeight::FreudWeight(double c, double lambda) : c_(c), lambda_(lambda) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("FreudWeight: c must be positive");
    }
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("FreudWeight: lambda must exceed 1");
    }
}

double FreudWeight::value(double x) const {
    return std::exp(-potential(x));
}

double FreudWeight::potential(double x) const {
    return c_ * std::pow(std::abs(x), lambda_);
}

double FreudWeight::potential_derivative(double x) const {
    if (x == 0.0) return 0.0;
    double mag = c_ * lambda_ * std::pow(std::abs(x), lambda_ - 1.0);
    return x > 0.0 ? mag : -mag;
}

double gamma_lambda(double lambda) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("gamma_lambda: lambda must exceed 1");
    }
    return gamma_fn(0.5) * gamma_fn(0.5 * lambda) /
           (2.0 * gamma_fn(0.5 * (lambda + 1.0)));
}

double mrs_number(const FreudWeight& w, int n) {
    if (n < 1) {
        throw std::invalid_argument("mrs_number: n must be >= 1");
    }
    double inv_lambda = 1.0 / w.lambda();
    return std::pow(gamma_lambda(w.lambda()), inv_lambda) *
           std::pow(w.c(), -inv_lambda) * std::pow(double(n), inv_lambda);
}

double ullman_density(double lambda, double s) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("ullman_density: lambda must exceed 1");
    }
    double as = std::abs(s);
    if (as > 1.0) {
        throw std::domain_error("ullman_density: |s| must not exceed 1");
    }
    if (as == 1.0) return 0.0;

    // After y = sqrt(s^2 + t^2) the integral becomes
    //   Integral_0^{t_max} (s^2 + t^2)^{(lambda-2)/2} dt,  t_max = sqrt(1-s^2),
    // which is smooth except for a scale-|s| feature at t = 0.
    const double t_max = std::sqrt((1.0 - as) * (1.0 + as));
    const double expo = 0.5 * (lambda - 2.0);
    if (as < 1e-15 * t_max) {
        // Exact antiderivative of t^{lambda-2}.
        return lambda / kPi * std::pow(t_max, lambda - 1.0) / (lambda - 1.0);
    }
    const auto& gl = gauss_legendre(64);
    auto panel = [&](double a, double b) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < gl.nodes.size(); ++i) {
            double t = mid + half * gl.nodes[i];
            acc += gl.weights[i] * std::pow(s * s + t * t, expo);
        }
        return half * acc;
    };
    double integral = 0.0;
    double t_head = std::min(as, t_max);
    integral += panel(0.0, t_head);  // integrand varies on scale >= |s| here
    double lo = t_head;
    while (lo < t_max) {
        double hi = std::min(2.0 * lo, t_max);
        integral += panel(lo, hi);
        lo = hi;
    }
    return lambda / kPi * integral;
}

double ullman_measure(double lambda, double a, double b) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("ullman_measure: lambda must exceed 1");
    }
    if (a > b) {
        throw std::invalid_argument("ullman_measure: requires a <= b");
    }
    a = std::clamp(a, -1.0, 1.0);
    b = std::clamp(b, -1.0, 1.0);
    if (a == b) return 0.0;
    QuadratureOptions opts;
    opts.abs_tol = 1e-11;
    opts.breakpoints = {0.0};
    return integrate_adaptive(
               [lambda](double s) { return ullman_density(lambda, s); }, a, b,
               opts)
        .value;
}

double equilibrium_density(const FreudWeight& w, int n, double x) {
    double an = mrs_number(w, n);
    if (std::abs(x) > an) {
        throw std::domain_error("equilibrium_density: |x| exceeds a_n");
    }
    return n / an * ullman_density(w.lambda(), x / an);
}

double field_ratio(const FreudWeight& w, int n, double x) {
    return w.potential_derivative(x) / equilibrium_density(w, n + 1, x);
}

double field_ratio_bound(const FreudWeight& w, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("field_ratio_bound: eps must lie in (0,1)");
    }
    double lambda = w.lambda();
    double p = std::pow(1.0 - eps, lambda - 1.0);
    return gamma_lambda(lambda) * kPi * (lambda - 1.0) * p / (1.0 - p);
}

double robin_constant(double lambda) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("robin_constant: lambda must exceed 1");
    }
    return std::log(2.0) + 1.0 / lambda;
}

UllmanDistribution::UllmanDistribution(double lambda, int cdf_grid_points)
    : lambda_(lambda) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("UllmanDistribution: lambda must exceed 1");
    }
    if (cdf_grid_points < 3) {
        throw std::invalid_argument("UllmanDistribution: grid too small");
    }
    grid_ = Eigen::ArrayXd::LinSpaced(cdf_grid_points, -1.0, 1.0);
    cdf_.resize(cdf_grid_points);
    cdf_[0] = 0.0;
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    for (int i = 1; i < cdf_grid_points; ++i) {
        double inc = integrate_adaptive(
                         [this](double s) { return ullman_density(lambda_, s); },
                         grid_[i - 1], grid_[i], opts)
                         .value;
        cdf_[i] = cdf_[i - 1] + inc;
    }
    // Normalize away the accumulated quadrature residual so cdf(1) == 1.
    cdf_ /= cdf_[cdf_grid_points - 1];
}

double UllmanDistribution::density(double s) const {
    return ullman_density(lambda_, s);
}

double UllmanDistribution::cdf(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const int n = static_cast<int>(grid_.size());
    double pos = (s + 1.0) / 2.0 * (n - 1);
    int i = std::min(static_cast<int>(pos), n - 2);
    double frac = pos - i;
    return cdf_[i] + frac * (cdf_[i + 1] - cdf_[i]);
}

}  // namespace freud
