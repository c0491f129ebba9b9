#pragma once

#include <Eigen/Core>
#include <complex>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "freud/weight.hpp"

namespace freud {

/// Knobs for the discretized Stieltjes construction. The quadrature support
/// is [-K a_{n_max}, K a_{n_max}]; the per-panel Gauss-Legendre order is
/// doubled until no recurrence coefficient moves by more than
/// stabilization_tol.
struct StieltjesOptions {
    double support_factor = 1.5;  // K
    int initial_order = 64;       // Gauss-Legendre points per panel
    int max_order = 1024;
    double stabilization_tol = 1e-10;
    /// Use the discretization even where a closed form exists (lambda = 2).
    bool force_stieltjes = false;
};

/// Three-term recurrence data for the orthonormal family {p_k} of the
/// measure W^2 dx:  a_{k+1} p_{k+1}(x) = x p_k(x) - a_k p_{k-1}(x).
/// Diagonal terms vanish because the weight is even. Immutable once built.
class RecurrenceTable {
public:
    RecurrenceTable(double lambda, double c, double mu0, Eigen::ArrayXd offdiag);

    double lambda() const { return lambda_; }
    double c() const { return c_; }
    double mu0() const { return mu0_; }
    int n_max() const { return static_cast<int>(offdiag_.size()); }
    FreudWeight weight() const { return FreudWeight(c_, lambda_); }

    /// Jacobi off-diagonal a_k, 1 <= k <= n_max.
    double a(int k) const;
    const Eigen::ArrayXd& offdiag() const { return offdiag_; }

    /// Leading coefficient gamma_k = (sqrt(mu0) * prod_{j<=k} a_j)^{-1},
    /// 0 <= k <= n_max.
    double leading(int k) const;
    /// log(gamma_k); stays finite where gamma_k itself would underflow.
    double log_leading(int k) const;

private:
    double lambda_;
    double c_;
    double mu0_;
    Eigen::ArrayXd offdiag_;      // a_1..a_{n_max}
    Eigen::ArrayXd leading_;      // gamma_0..gamma_{n_max}
    Eigen::ArrayXd log_leading_;
};

/// Builds the recurrence table for W^2. lambda = 2 uses the closed form
/// a_k = sqrt(k / (4c)) unless force_stieltjes is set; every other lambda
/// runs the discretized Stieltjes procedure on a symmetric panel grid.
/// Throws NumericError if doubling the panel order fails to stabilize the
/// coefficients within max_order.
RecurrenceTable compute_recurrence(const FreudWeight& w, int n_max,
                                   const StieltjesOptions& opts = {});

/// Values and derivatives of p_0..p_n at one point. Scalar is double for
/// real evaluation or std::complex<double> for the Newton polish path.
template <typename Scalar>
struct BasisEval {
    Eigen::Vector<Scalar, Eigen::Dynamic> values;
    Eigen::Vector<Scalar, Eigen::Dynamic> derivatives;
};

template <typename Scalar>
BasisEval<Scalar> eval_basis(const RecurrenceTable& table, int n, Scalar x);

extern template BasisEval<double> eval_basis(const RecurrenceTable&, int, double);
extern template BasisEval<std::complex<double>> eval_basis(
    const RecurrenceTable&, int, std::complex<double>);

/// Overflow-guarded evaluation: true value = values[k] * 2^{log2_scale}.
/// Far outside the Mhaskar-Rakhmanov-Saff interval p_k grows like
/// exp(c|x|^lambda), beyond double range for large n; the shared power-of-two
/// exponent keeps the stored mantissas bounded. Quantities that are invariant
/// under common scaling (Kac-Rice intensity) can ignore log2_scale entirely.
struct ScaledBasisEval {
    Eigen::VectorXd values;
    Eigen::VectorXd derivatives;
    long log2_scale = 0;
};

ScaledBasisEval eval_basis_scaled(const RecurrenceTable& table, int n, double x);

/// gamma_n for the table (see RecurrenceTable::leading).
double leading_coefficient(const RecurrenceTable& table, int n);

/// Diagonal reproducing-kernel values at x:
///   A = K_{n+1}(x,x), B = K^{(0,1)}_{n+1}(x,x), C = K^{(1,1)}_{n+1}(x,x);
/// A > 0 always and AC - B^2 >= 0 up to rounding.
struct KernelTriple {
    double a;
    double b;
    double c;
};

KernelTriple kernel_triple(const RecurrenceTable& table, int n_plus_1, double x);

/// tau_{j,k} coefficients of the kernel universality expansion:
/// 0 for j+k odd, (-1)^{(j-k)/2} / (j+k+1) for j+k even.
double tau_universality(int j, int k);

/// Scaled kernel ratios at x together with their universality predictions:
///   r00 = W^2 A / sigma_{n+1}            -> 1
///   r01 = W^2 B / sigma_{n+1}^2          -> Q'/sigma_{n+1}
///   r11 = W^2 C / sigma_{n+1}^3          -> (Q'/sigma_{n+1})^2 + pi^2/3
/// Requires |x| < a_{n+1}.
struct UniversalityRatios {
    double r00, r01, r11;
    double pred00, pred01, pred11;
};

UniversalityRatios universality_ratios(const RecurrenceTable& table,
                                       const FreudWeight& w, int n, double x);

/// Gauss rule for the measure W^2 dx, built from the Jacobi matrix
/// (Golub-Welsch nodes). Weights are stored divided by W^2(x_i) and are
/// computed through the Christoffel function 1/sum_k (p_k W)^2(x_i), which
/// is the numerically safe route: eigenvector-based weights lose all
/// relative accuracy in the tails once the exp(2c|x|^lambda) factor is
/// removed. Inner products are evaluated as
///   Integral f g W^2 = sum_i weights_over_w2[i] (fW)(x_i) (gW)(x_i).
struct GaussRule {
    Eigen::ArrayXd nodes;            // ascending
    Eigen::ArrayXd weights_over_w2;  // w_i / W^2(x_i)
};

GaussRule gauss_rule(const RecurrenceTable& table, int m);

/// Matrix of weighted basis values (p_k W)(x_i), i indexing points and
/// k = 0..n columns. Bounded on the whole real line, so safe at any x.
Eigen::MatrixXd weighted_basis_matrix(const RecurrenceTable& table,
                                      const Eigen::ArrayXd& points, int n);

/// Versioned JSON document for caching expensive Stieltjes runs.
nlohmann::ordered_json table_to_json(const RecurrenceTable& table);
RecurrenceTable table_from_json(const nlohmann::json& doc);

/// FREUD_CACHE_DIR override, else .freud-cache under the current directory.
std::filesystem::path default_cache_dir();

/// Cached variant of compute_recurrence keyed by (lambda, c, n_max, grid
/// parameters); a key mismatch in an existing file is treated as stale and
/// recomputed.
RecurrenceTable compute_recurrence_cached(
    const FreudWeight& w, int n_max, const StieltjesOptions& opts = {},
    std::optional<std::filesystem::path> cache_dir = std::nullopt);

}  // namespace freud
