#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>

#include "freud/recurrence.hpp"
#include "freud/weight.hpp"

namespace freud {

/// Basis for the random function sum_j c_j g_j(x). g_0 is a nonzero constant.
/// The evaluator fills values/derivatives of g_0..g_n and returns a shared
/// power-of-two exponent (true value = stored * 2^exponent); everything the
/// Kac-Rice intensity needs is invariant under that common scale.
class BasisEvaluator {
public:
    using EvalFn =
        std::function<long(double, Eigen::VectorXd&, Eigen::VectorXd&)>;

    BasisEvaluator(int degree, EvalFn eval);

    int degree() const { return degree_; }
    long operator()(double x, Eigen::VectorXd& values,
                    Eigen::VectorXd& derivatives) const {
        return eval_(x, values, derivatives);
    }

    /// g_j(x) = x^j.
    static BasisEvaluator monomial(int degree);
    /// g_j = p_j from a recurrence table (copied into the evaluator).
    static BasisEvaluator orthonormal(const RecurrenceTable& table, int degree);

private:
    int degree_;
    EvalFn eval_;
};

/// Kac-Rice zero-crossing intensity rho(x) = sqrt(max(AC - B^2, 0)) / (pi A)
/// with A = sum g_j^2, B = sum g_j g_j', C = sum g_j'^2. The clamp only
/// absorbs rounding-level negatives (Cauchy-Schwarz gives AC - B^2 >= 0).
/// The Gaussian coefficient variance cancels between numerator and
/// denominator, so it is not a parameter.
double intensity(const BasisEvaluator& basis, double x);

struct ExpectedZerosOptions {
    double abs_tol = 1e-8;
    std::vector<double> breakpoints;
};

/// Expected number of real zeros in [a, b]: adaptive Gauss-Kronrod
/// integration of the intensity. Throws NumericError (with the achieved
/// error estimate) if the subdivision cap is hit.
double expected_zeros(const BasisEvaluator& basis, double a, double b,
                      const ExpectedZerosOptions& opts = {});

/// Expected real zeros over the whole line for the orthonormal basis of
/// degree n. Integrates [-T, T] with T = 2 a_{n+1} seeded at the soft edges
/// +-a_{n+1}(1 +- n^{-2/3}), plus the two tails mapped through u = T/x
/// (the intensity decays only like a_n/(pi x^2), so the tails carry mass
/// that plain truncation would never resolve). T is then extended by 1.5x
/// until the result moves by less than 1e-6, at most 4 times.
double expected_zeros_realline(const FreudWeight& w, const RecurrenceTable& table,
                               int n);

/// Expected zeros of the contracted polynomial P_n*(s) = P_n(a_{n+1} s) in
/// [a, b], -1 < a < b < 1: equals the expected zeros of P_n over the dilated
/// interval [a_{n+1} a, a_{n+1} b].
double expected_zeros_scaled(const FreudWeight& w, const RecurrenceTable& table,
                             int n, double a, double b);

/// Sampled intensity curve for CSV export / plotting.
struct IntensityProfile {
    Eigen::ArrayXd grid;
    Eigen::ArrayXd rho;
    int n = 0;

    /// Columns: x, rho (17 significant digits).
    void write_csv(std::ostream& out) const;
};

IntensityProfile intensity_profile(const BasisEvaluator& basis, double a,
                                   double b, int points);

}  // namespace freud
