#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "freud/errors.hpp"

namespace freud {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule, computed by Newton
/// iteration on the Legendre recurrence and cached per thread.
const GaussLegendre& gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-8;
    /// Subdivision cap: refinement stops (with failure reporting) once this
    /// many panels exist and the budget is still not met.
    long max_panels = 20000;
    /// Interior points where the integrand changes character; the adaptive
    /// scheme integrates each sub-span separately.
    std::vector<double> breakpoints;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Deterministic: panels are visited left to right, depth first, so the
/// accumulation tree is fixed for fixed inputs. Throws NumericError with the
/// achieved error estimate if the depth cap is hit before the local target.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts = {});

/// Sum with a fixed pairwise reduction tree (bit-reproducible for a fixed
/// ordering of the inputs, independent of any threading upstream).
double pairwise_sum(std::span<const double> values);

}  // namespace freud
