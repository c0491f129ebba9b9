#include "freud/zeros.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "freud/errors.hpp"

namespace freud {

Eigen::VectorXd CoefficientVector::real_values() const {
    if (!is_real) {
        throw std::logic_error("CoefficientVector: not a real draw");
    }
    return values.real();
}

CoefficientVector CoefficientVector::from_real(Eigen::VectorXd c) {
    CoefficientVector out;
    out.values = c.cast<std::complex<double>>();
    out.is_real = true;
    return out;
}

CoefficientVector CoefficientVector::from_complex(Eigen::VectorXcd c) {
    CoefficientVector out;
    out.values = std::move(c);
    out.is_real = false;
    return out;
}

void ZeroSet::write_csv(std::ostream& out) const {
    out << "re,im,re_scaled,im_scaled\n";
    char line[140];
    for (Eigen::Index i = 0; i < zeros.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n",
                      zeros[i].real(), zeros[i].imag(), scaled[i].real(),
                      scaled[i].imag());
        out << line;
    }
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> comrade_matrix(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& coeffs,
    const RecurrenceTable& table) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) {
        throw std::invalid_argument("comrade_matrix: need degree >= 1");
    }
    if (n > table.n_max()) {
        throw std::invalid_argument("comrade_matrix: degree exceeds table");
    }
    if (std::abs(coeffs[n]) == 0.0) {
        throw std::invalid_argument(
            "comrade_matrix: leading coefficient vanishes (degree-deficient)");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        m(k, k - 1) = Scalar(table.a(k));
        m(k - 1, k) = Scalar(table.a(k));
    }
    const Scalar shift = Scalar(table.a(n)) / coeffs[n];
    for (int j = 0; j < n; ++j) {
        m(n - 1, j) -= shift * coeffs[j];
    }
    return m;
}

template Eigen::MatrixXd comrade_matrix(const Eigen::VectorXd&,
                                        const RecurrenceTable&);
template Eigen::MatrixXcd comrade_matrix(const Eigen::VectorXcd&,
                                         const RecurrenceTable&);

namespace {

void sort_zeros(Eigen::VectorXcd& z) {
    std::vector<std::complex<double>> tmp(z.data(), z.data() + z.size());
    std::sort(tmp.begin(), tmp.end(), [](const auto& u, const auto& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    z = Eigen::Map<Eigen::VectorXcd>(tmp.data(), tmp.size());
}

template <typename CoeffVector>
void newton_polish(Eigen::VectorXcd& z, const CoeffVector& coeffs,
                   const RecurrenceTable& table) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        BasisEval<std::complex<double>> e =
            eval_basis<std::complex<double>>(table, n, z[i]);
        std::complex<double> p = 0.0, dp = 0.0;
        for (int k = 0; k <= n; ++k) {
            p += std::complex<double>(coeffs[k]) * e.values[k];
            dp += std::complex<double>(coeffs[k]) * e.derivatives[k];
        }
        if (std::abs(dp) > 0.0) {
            z[i] -= p / dp;
        }
    }
}

ZeroSet finish_zero_set(Eigen::VectorXcd zeros, const RecurrenceTable& table) {
    sort_zeros(zeros);
    ZeroSet zs;
    zs.n = static_cast<int>(zeros.size());
    const double an = mrs_number(table.weight(), zs.n);
    zs.scaled = zeros / an;
    zs.zeros = std::move(zeros);
    return zs;
}

}  // namespace

ZeroSet all_zeros(const Eigen::VectorXd& coeffs, const RecurrenceTable& table,
                  bool polish) {
    Eigen::MatrixXd m = comrade_matrix<double>(coeffs, table);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "all_zeros: Schur iteration did not converge (n = " << m.rows()
            << ")";
        throw NumericError(msg.str());
    }
    Eigen::VectorXcd z = solver.eigenvalues();
    if (polish) newton_polish(z, coeffs, table);
    return finish_zero_set(std::move(z), table);
}

ZeroSet all_zeros(const Eigen::VectorXcd& coeffs, const RecurrenceTable& table,
                  bool polish) {
    Eigen::MatrixXcd m = comrade_matrix<std::complex<double>>(coeffs, table);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(
        m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "all_zeros: complex Schur iteration did not converge (n = "
            << m.rows() << ")";
        throw NumericError(msg.str());
    }
    Eigen::VectorXcd z = solver.eigenvalues();
    if (polish) newton_polish(z, coeffs, table);
    return finish_zero_set(std::move(z), table);
}

ZeroSet all_zeros(const CoefficientVector& coeffs, const RecurrenceTable& table,
                  bool polish) {
    if (coeffs.is_real) {
        return all_zeros(coeffs.real_values(), table, polish);
    }
    return all_zeros(coeffs.values, table, polish);
}

std::pair<double, long> polynomial_value_scaled(const Eigen::VectorXd& coeffs,
                                                const RecurrenceTable& table,
                                                double x) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    ScaledBasisEval e = eval_basis_scaled(table, n, x);
    return {coeffs.dot(e.values), e.log2_scale};
}

ScanGrid make_scan_grid(const FreudWeight& w, int n, double a, double b) {
    if (!(a < b)) {
        throw std::invalid_argument("make_scan_grid: requires a < b");
    }
    ScanGrid grid;
    grid.a = a;
    grid.b = b;
    const double floor_step = (b - a) / 64.0;
    const double an1 = mrs_number(w, n + 1);
    grid.points.push_back(a);
    double x = a;
    while (x < b) {
        double step = floor_step;
        if (std::abs(x) < an1) {
            double sigma = equilibrium_density(w, n + 1, x);
            if (sigma > 0.0) {
                step = std::min(step, 0.2 / sigma);
            }
        }
        x = std::min(x + step, b);
        grid.points.push_back(x);
    }
    return grid;
}

namespace {

// Value and derivative mantissas of P at x; both share one power-of-two
// exponent, so sign tests and the Newton ratio |f|/|d| are scale-free.
struct ScanPoint {
    double f;
    double d;
};

ScanPoint scan_eval(const Eigen::VectorXd& coeffs, const RecurrenceTable& table,
                    double x) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    ScaledBasisEval e = eval_basis_scaled(table, n, x);
    return {coeffs.dot(e.values), coeffs.dot(e.derivatives)};
}

// Recursive cell scan. Sign changes are bisected down to width_target; cells
// without a sign change are split further while an interior extremum (sign
// change of P') could still hide a pair of zeros within Newton reach of an
// endpoint. Even-multiplicity tangencies are probability zero and bottom out
// at the depth cap.
int scan_cell(const Eigen::VectorXd& coeffs, const RecurrenceTable& table,
              double x0, const ScanPoint& p0, double x1, const ScanPoint& p1,
              double width_target, int depth, std::vector<double>& locations) {
    // signbit(+0) = false keeps a node-exact zero attributed to exactly one
    // of its two adjacent cells.
    const double width = x1 - x0;
    const double mid = 0.5 * (x0 + x1);
    if (std::signbit(p0.f) != std::signbit(p1.f)) {
        if (width <= width_target || !(x0 < mid && mid < x1)) {
            locations.push_back(mid);
            return 1;
        }
        ScanPoint pm = scan_eval(coeffs, table, mid);
        return scan_cell(coeffs, table, x0, p0, mid, pm, width_target, depth + 1,
                         locations) +
               scan_cell(coeffs, table, mid, pm, x1, p1, width_target, depth + 1,
                         locations);
    }
    if (depth >= 48 || !(x0 < mid && mid < x1)) return 0;
    const bool extremum_inside = std::signbit(p0.d) != std::signbit(p1.d) ||
                                 p0.d == 0.0 || p1.d == 0.0;
    if (depth > 0 && !extremum_inside) return 0;
    if (depth > 0) {
        // Newton reach: a dip through zero needs an endpoint value small
        // relative to the local slope over this cell.
        auto reach = [width](const ScanPoint& p) {
            if (p.d == 0.0) return true;
            return std::abs(p.f) <= 4.0 * width * std::abs(p.d);
        };
        if (!reach(p0) && !reach(p1)) return 0;
    }
    ScanPoint pm = scan_eval(coeffs, table, mid);
    return scan_cell(coeffs, table, x0, p0, mid, pm, width_target, depth + 1,
                     locations) +
           scan_cell(coeffs, table, mid, pm, x1, p1, width_target, depth + 1,
                     locations);
}

}  // namespace

RealZeroCount real_zero_count(const Eigen::VectorXd& coeffs,
                              const RecurrenceTable& table,
                              const ScanGrid& grid) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1 || n > table.n_max()) {
        throw std::invalid_argument("real_zero_count: degree out of range");
    }
    RealZeroCount out;
    const double width_target = 1e-10 * (grid.b - grid.a);
    double x_prev = grid.points.front();
    ScanPoint p_prev = scan_eval(coeffs, table, x_prev);
    for (std::size_t i = 1; i < grid.points.size(); ++i) {
        double x_cur = grid.points[i];
        ScanPoint p_cur = scan_eval(coeffs, table, x_cur);
        out.count += scan_cell(coeffs, table, x_prev, p_prev, x_cur, p_cur,
                               width_target, 0, out.locations);
        x_prev = x_cur;
        p_prev = p_cur;
    }
    std::sort(out.locations.begin(), out.locations.end());
    return out;
}

RealZeroCount real_zero_count(const Eigen::VectorXd& coeffs,
                              const RecurrenceTable& table, double a, double b) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    ScanGrid grid = make_scan_grid(table.weight(), n, a, b);
    return real_zero_count(coeffs, table, grid);
}

EmpiricalMeasure::EmpiricalMeasure(Eigen::VectorXcd scaled_points)
    : points_(std::move(scaled_points)) {
    std::vector<std::complex<double>> tmp(points_.data(),
                                          points_.data() + points_.size());
    std::sort(tmp.begin(), tmp.end(), [](const auto& u, const auto& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    points_ = Eigen::Map<Eigen::VectorXcd>(tmp.data(), tmp.size());
}

double EmpiricalMeasure::rectangle_mass(double re_lo, double re_hi,
                                        double im_lo, double im_hi) const {
    if (points_.size() == 0) return 0.0;
    long hits = 0;
    for (Eigen::Index i = 0; i < points_.size(); ++i) {
        const auto& z = points_[i];
        if (z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo &&
            z.imag() <= im_hi) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / points_.size();
}

double EmpiricalMeasure::interval_mass(double a, double b, double im_tol) const {
    if (points_.size() == 0) return 0.0;
    long hits = 0;
    for (Eigen::Index i = 0; i < points_.size(); ++i) {
        const auto& z = points_[i];
        if (z.real() >= a && z.real() <= b && std::abs(z.imag()) < im_tol) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / points_.size();
}

double EmpiricalMeasure::real_cdf(double x) const {
    if (points_.size() == 0) return 0.0;
    long hits = 0;
    for (Eigen::Index i = 0; i < points_.size(); ++i) {
        if (points_[i].real() <= x) ++hits;
    }
    return static_cast<double>(hits) / points_.size();
}

EmpiricalMeasure counting_measure(const ZeroSet& zs) {
    return EmpiricalMeasure(zs.scaled);
}

}  // namespace freud
