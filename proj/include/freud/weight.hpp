#pragma once

#include <Eigen/Core>
#include <memory>

namespace freud {

/// The Freud weight W(x) = exp(-c |x|^lambda) with c > 0, lambda > 1.
/// External field Q(x) = c |x|^lambda, so W = exp(-Q).
class FreudWeight {
public:
    FreudWeight(double c, double lambda);

    double c() const { return c_; }
    double lambda() const { return lambda_; }

    double value(double x) const;                 // W(x)
    double potential(double x) const;             // Q(x)
    double potential_derivative(double x) const;  // Q'(x), odd; Q'(0) = 0

private:
    double c_;
    double lambda_;
};

/// gamma_lambda = Gamma(1/2) Gamma(lambda/2) / (2 Gamma((lambda+1)/2)).
/// Rejects lambda <= 1.
double gamma_lambda(double lambda);

/// Mhaskar-Rakhmanov-Saff number a_n = gamma_lambda^{1/lambda} c^{-1/lambda}
/// n^{1/lambda}. Rejects n < 1.
double mrs_number(const FreudWeight& w, int n);

/// Density of the Ullman distribution at s in [-1, 1]:
///   (lambda/pi) * Integral_{|s|}^{1} y^{lambda-1} / sqrt(y^2 - s^2) dy.
/// The edge singularity is removed by the substitution y = sqrt(s^2 + t^2);
/// the resulting smooth integrand is handled with composite Gauss-Legendre
/// panels. Even in s, vanishes at s = +-1. Throws std::domain_error for
/// |s| > 1.
double ullman_density(double lambda, double s);

/// Mass mu_w([a, b]) of the Ullman distribution. Inputs are clipped to
/// [-1, 1] (the measure has no mass outside its support). Requires a <= b.
double ullman_measure(double lambda, double a, double b);

/// Equilibrium density sigma_n(x) = (n / a_n) * ullman_density(lambda, x/a_n)
/// on [-a_n, a_n], total mass n. Throws std::domain_error for |x| > a_n.
double equilibrium_density(const FreudWeight& w, int n, double x);

/// Q'(x) / sigma_{n+1}(x); odd in x, zero at the origin.
double field_ratio(const FreudWeight& w, int n, double x);

/// The n-independent bound C on |field_ratio| over (1-eps)[-a_{n+1}, a_{n+1}]:
///   C = gamma_lambda * pi * (lambda-1) * (1-eps)^{lambda-1}
///       / (1 - (1-eps)^{lambda-1}).
/// Requires eps in (0, 1).
double field_ratio_bound(const FreudWeight& w, double eps);

/// Modified Robin constant F_w = log 2 + 1/lambda for the normalized weight
/// w = exp(-gamma_lambda |x|^lambda).
double robin_constant(double lambda);

/// Ullman distribution with a precomputed CDF grid for fast repeated
/// evaluation (Kolmogorov-Smirnov statistics, CLI grids).
class UllmanDistribution {
public:
    explicit UllmanDistribution(double lambda, int cdf_grid_points = 2049);

    double lambda() const { return lambda_; }
    double density(double s) const;
    /// CDF on [-1, 1]; clamps to 0 below -1 and 1 above +1.
    double cdf(double s) const;

private:
    double lambda_;
    Eigen::ArrayXd grid_;
    Eigen::ArrayXd cdf_;
};

}  // namespace freud
