#pragma once

#include <Eigen/Core>
#include <complex>
#include <iosfwd>
#include <vector>

#include "freud/recurrence.hpp"
#include "freud/weight.hpp"

namespace freud {

/// Coefficients c_0..c_n of P_n = sum c_j p_j in the orthonormal basis.
/// Real draws keep is_real so zero finding can stay on the real comrade
/// matrix (eigenvalues then come in exact conjugate pairs).
struct CoefficientVector {
    Eigen::VectorXcd values;
    bool is_real = true;

    int degree() const { return static_cast<int>(values.size()) - 1; }
    Eigen::VectorXd real_values() const;

    static CoefficientVector from_real(Eigen::VectorXd c);
    static CoefficientVector from_complex(Eigen::VectorXcd c);
};

/// All n zeros of one realized P_n plus their contraction by a_n.
struct ZeroSet {
    Eigen::VectorXcd zeros;
    Eigen::VectorXcd scaled;  // zeros / a_n
    int n = 0;

    /// Columns: re, im, re_scaled, im_scaled (17 significant digits).
    void write_csv(std::ostream& out) const;
};

/// Colleague/comrade matrix for P_n in the orthonormal basis: the Jacobi
/// matrix J_n (zero diagonal, off-diagonals a_1..a_{n-1}) with its last row
/// shifted by -(a_n / c_n) (c_0, ..., c_{n-1}). Its eigenvalues are exactly
/// the zeros of P_n. Requires c_n != 0.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> comrade_matrix(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& coeffs,
    const RecurrenceTable& table);

extern template Eigen::MatrixXd comrade_matrix(const Eigen::VectorXd&,
                                               const RecurrenceTable&);
extern template Eigen::MatrixXcd comrade_matrix(const Eigen::VectorXcd&,
                                                const RecurrenceTable&);

/// Zeros of P_n as eigenvalues of the comrade matrix (Schur iteration via
/// Eigen). polish applies a single complex Newton step on P_n to each zero.
/// Output is sorted by (Re, Im) so runs are comparable across environments.
ZeroSet all_zeros(const Eigen::VectorXd& coeffs, const RecurrenceTable& table,
                  bool polish = false);
ZeroSet all_zeros(const Eigen::VectorXcd& coeffs, const RecurrenceTable& table,
                  bool polish = false);
ZeroSet all_zeros(const CoefficientVector& coeffs, const RecurrenceTable& table,
                  bool polish = false);

/// Evaluate P_n(x) = sum c_j p_j(x) with the overflow-guarded basis; the
/// returned pair is (mantissa, log2 exponent).
std::pair<double, long> polynomial_value_scaled(const Eigen::VectorXd& coeffs,
                                                const RecurrenceTable& table,
                                                double x);

/// Precomputed sign-scan grid on [a, b]: spacing follows
/// min(0.2 / sigma_{n+1}(x), (b-a)/64) inside the MRS interval (denser where
/// real zeros cluster), the uniform floor elsewhere.
struct ScanGrid {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> points;
};

ScanGrid make_scan_grid(const FreudWeight& w, int n, double a, double b);

struct RealZeroCount {
    int count = 0;
    std::vector<double> locations;
};

/// Count real zeros of P_n in [a, b] by sign changes on the adaptive grid;
/// each crossing is localized by bisection to width 1e-10 (b-a).
/// Even-multiplicity tangencies are probability zero and not handled.
RealZeroCount real_zero_count(const Eigen::VectorXd& coeffs,
                              const RecurrenceTable& table, double a, double b);
RealZeroCount real_zero_count(const Eigen::VectorXd& coeffs,
                              const RecurrenceTable& table,
                              const ScanGrid& grid);

/// Uniform probability measure on the scaled zeros z_k / a_n.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(Eigen::VectorXcd scaled_points);

    double total_mass() const { return points_.size() > 0 ? 1.0 : 0.0; }
    /// Mass of the closed rectangle [re_lo, re_hi] x [im_lo, im_hi].
    double rectangle_mass(double re_lo, double re_hi, double im_lo,
                          double im_hi) const;
    /// Mass of {Re in [a, b], |Im| < im_tol}.
    double interval_mass(double a, double b, double im_tol) const;
    /// Empirical CDF of real parts.
    double real_cdf(double x) const;
    const Eigen::VectorXcd& points() const { return points_; }

private:
    Eigen::VectorXcd points_;  // sorted by (Re, Im)
};

EmpiricalMeasure counting_measure(const ZeroSet& zs);

}  // namespace freud
