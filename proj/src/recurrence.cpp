#include "freud/recurrence.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "freud/errors.hpp"
#include "freud/quadrature.hpp"

namespace freud {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kTableSchemaVersion = 1;
}  // namespace

RecurrenceTable::RecurrenceTable(double lambda, double c, double mu0,
                                 Eigen::ArrayXd offdiag)
    : lambda_(lambda), c_(c), mu0_(mu0), offdiag_(std::move(offdiag)) {
    if (!(lambda_ > 1.0) || !(c_ > 0.0)) {
        throw std::invalid_argument("RecurrenceTable: invalid weight parameters");
    }
    if (!(mu0_ > 0.0)) {
        throw std::invalid_argument("RecurrenceTable: mu0 must be positive");
    }
    if (offdiag_.size() < 1 || !(offdiag_ > 0.0).all()) {
        throw std::invalid_argument(
            "RecurrenceTable: off-diagonal coefficients must be positive");
    }
    const int n = n_max();
    leading_.resize(n + 1);
    log_leading_.resize(n + 1);
    leading_[0] = 1.0 / std::sqrt(mu0_);
    log_leading_[0] = -0.5 * std::log(mu0_);
    for (int k = 1; k <= n; ++k) {
        leading_[k] = leading_[k - 1] / offdiag_[k - 1];
        log_leading_[k] = log_leading_[k - 1] - std::log(offdiag_[k - 1]);
    }
}

double RecurrenceTable::a(int k) const {
    if (k < 1 || k > n_max()) {
        throw std::invalid_argument("RecurrenceTable::a: k out of range");
    }
    return offdiag_[k - 1];
}

double RecurrenceTable::leading(int k) const {
    if (k < 0 || k > n_max()) {
        throw std::invalid_argument("RecurrenceTable::leading: k out of range");
    }
    return leading_[k];
}

double RecurrenceTable::log_leading(int k) const {
    if (k < 0 || k > n_max()) {
        throw std::invalid_argument("RecurrenceTable::log_leading: k out of range");
    }
    return log_leading_[k];
}

namespace {

struct DiscreteGrid {
    Eigen::ArrayXd x;
    Eigen::ArrayXd w;
};

// Symmetric panel grid for the measure W^2 dx on [-T, T], T = K a_{n_max}.
// Dyadic panels toward the origin absorb the |x|^lambda kink of the
// exponent at 0 for non-even lambda; uniform panels cover the bulk where the
// degree-2 n_max integrands oscillate.
DiscreteGrid build_grid(const FreudWeight& w, int n_max, double support_factor,
                        int order) {
    const double T = support_factor * mrs_number(w, n_max);
    const double bulk_start = T / 8.0;
    constexpr int kDyadicLevels = 30;

    std::vector<std::pair<double, double>> panels;
    double lo = bulk_start * std::pow(0.5, kDyadicLevels);
    panels.emplace_back(0.0, lo);
    while (lo < bulk_start) {
        double hi = std::min(2.0 * lo, bulk_start);
        panels.emplace_back(lo, hi);
        lo = hi;
    }
    double x0 = bulk_start;
    while (x0 < T) {
        double x1 = std::min(x0 + T / 8.0, T);
        panels.emplace_back(x0, x1);
        x0 = x1;
    }

    const auto& gl = gauss_legendre(order);
    const int per_half = static_cast<int>(panels.size()) * order;
    DiscreteGrid grid;
    grid.x.resize(2 * per_half);
    grid.w.resize(2 * per_half);
    int j = 0;
    for (const auto& [a, b] : panels) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < order; ++i, ++j) {
            double xi = mid + half * gl.nodes[i];
            double wi = half * gl.weights[i];
            grid.x[per_half + j] = xi;
            grid.w[per_half + j] = wi;
            grid.x[per_half - 1 - j] = -xi;
            grid.w[per_half - 1 - j] = wi;
        }
    }
    return grid;
}

struct StieltjesRun {
    double mu0;
    Eigen::ArrayXd offdiag;
};

// Discretized Stieltjes sweep. Works on weighted values q_k = p_k W, which
// stay bounded on the whole grid; the three-term recurrence is identical
// because W(x_i) enters as a per-node constant.
StieltjesRun stieltjes_sweep(const FreudWeight& w, int n_max,
                             const DiscreteGrid& grid) {
    const Eigen::ArrayXd wx =
        (-w.c() * grid.x.abs().pow(w.lambda())).exp();  // W at the nodes
    StieltjesRun run;
    run.offdiag.resize(n_max);

    Eigen::ArrayXd v = wx;
    run.mu0 = (grid.w * v * v).sum();
    v /= std::sqrt(run.mu0);
    Eigen::ArrayXd v_prev = Eigen::ArrayXd::Zero(grid.x.size());
    double a_prev = 0.0;
    for (int k = 1; k <= n_max; ++k) {
        Eigen::ArrayXd u = grid.x * v - a_prev * v_prev;
        double a_k = std::sqrt((grid.w * u * u).sum());
        if (!(a_k > 0.0) || !std::isfinite(a_k)) {
            std::ostringstream msg;
            msg << "compute_recurrence: discrete norm degenerated at k = " << k;
            throw NumericError(msg.str());
        }
        run.offdiag[k - 1] = a_k;
        v_prev.swap(v);
        v = u / a_k;
        a_prev = a_k;
    }
    return run;
}

}  // namespace

RecurrenceTable compute_recurrence(const FreudWeight& w, int n_max,
                                   const StieltjesOptions& opts) {
    if (n_max < 1) {
        throw std::invalid_argument("compute_recurrence: n_max must be >= 1");
    }
    if (w.lambda() == 2.0 && !opts.force_stieltjes) {
        // Gaussian measure W^2 = exp(-2c x^2): a_k = sqrt(k/(4c)),
        // mu0 = sqrt(pi/(2c)).
        Eigen::ArrayXd offdiag(n_max);
        for (int k = 1; k <= n_max; ++k) {
            offdiag[k - 1] = std::sqrt(k / (4.0 * w.c()));
        }
        double mu0 = std::sqrt(kPi / (2.0 * w.c()));
        return RecurrenceTable(w.lambda(), w.c(), mu0, std::move(offdiag));
    }

    int order = opts.initial_order;
    StieltjesRun coarse = stieltjes_sweep(w, n_max, build_grid(w, n_max,
                                                               opts.support_factor,
                                                               order));
    double delta = std::numeric_limits<double>::infinity();
    while (2 * order <= opts.max_order) {
        StieltjesRun fine = stieltjes_sweep(
            w, n_max, build_grid(w, n_max, opts.support_factor, 2 * order));
        delta = (fine.offdiag - coarse.offdiag).abs().maxCoeff();
        delta = std::max(delta, std::abs(fine.mu0 - coarse.mu0));
        if (delta <= opts.stabilization_tol) {
            return RecurrenceTable(w.lambda(), w.c(), fine.mu0,
                                   std::move(fine.offdiag));
        }
        coarse = std::move(fine);
        order *= 2;
    }
    std::ostringstream msg;
    msg << "compute_recurrence: discretization not stabilized (lambda = "
        << w.lambda() << ", c = " << w.c() << ", n_max = " << n_max
        << "): last refinement " << order << " -> " << 2 * order
        << " nodes/panel still moved coefficients by " << delta << " > "
        << opts.stabilization_tol;
    throw NumericError(msg.str());
}

template <typename Scalar>
BasisEval<Scalar> eval_basis(const RecurrenceTable& table, int n, Scalar x) {
    if (n < 0 || n > table.n_max()) {
        throw std::invalid_argument("eval_basis: n exceeds table capacity");
    }
    BasisEval<Scalar> out;
    out.values.resize(n + 1);
    out.derivatives.resize(n + 1);
    out.values[0] = Scalar(1.0 / std::sqrt(table.mu0()));
    out.derivatives[0] = Scalar(0.0);
    if (n == 0) return out;
    out.values[1] = x * out.values[0] / table.a(1);
    out.derivatives[1] = out.values[0] / table.a(1);
    for (int k = 1; k < n; ++k) {
        const double ak = table.a(k);
        const double ak1 = table.a(k + 1);
        out.values[k + 1] = (x * out.values[k] - ak * out.values[k - 1]) / ak1;
        out.derivatives[k + 1] =
            (out.values[k] + x * out.derivatives[k] - ak * out.derivatives[k - 1]) /
            ak1;
    }
    return out;
}

template BasisEval<double> eval_basis(const RecurrenceTable&, int, double);
template BasisEval<std::complex<double>> eval_basis(const RecurrenceTable&, int,
                                                    std::complex<double>);

ScaledBasisEval eval_basis_scaled(const RecurrenceTable& table, int n, double x) {
    if (n < 0 || n > table.n_max()) {
        throw std::invalid_argument("eval_basis_scaled: n exceeds table capacity");
    }
    ScaledBasisEval out;
    out.values.resize(n + 1);
    out.derivatives.resize(n + 1);
    out.values[0] = 1.0 / std::sqrt(table.mu0());
    out.derivatives[0] = 0.0;
    constexpr double kRescaleAt = 0x1p200;
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            out.values[1] = x * out.values[0] / table.a(1);
            out.derivatives[1] = out.values[0] / table.a(1);
        } else {
            const double ak = table.a(k);
            const double ak1 = table.a(k + 1);
            out.values[k + 1] =
                (x * out.values[k] - ak * out.values[k - 1]) / ak1;
            out.derivatives[k + 1] = (out.values[k] + x * out.derivatives[k] -
                                      ak * out.derivatives[k - 1]) /
                                     ak1;
        }
        double m = std::max(std::abs(out.values[k + 1]),
                            std::abs(out.derivatives[k + 1]));
        if (m > kRescaleAt) {
            int ex = 0;
            std::frexp(m, &ex);
            double scale = std::ldexp(1.0, -ex);
            out.values.head(k + 2) *= scale;
            out.derivatives.head(k + 2) *= scale;
            out.log2_scale += ex;
        }
    }
    return out;
}

double leading_coefficient(const RecurrenceTable& table, int n) {
    return table.leading(n);
}

KernelTriple kernel_triple(const RecurrenceTable& table, int n_plus_1, double x) {
    if (n_plus_1 < 1 || n_plus_1 > table.n_max() + 1) {
        throw std::invalid_argument("kernel_triple: capacity violation");
    }
    ScaledBasisEval e = eval_basis_scaled(table, n_plus_1 - 1, x);
    // true kernel = scaled sums * 2^{2 log2_scale}
    double rescale = std::exp2(2.0 * static_cast<double>(e.log2_scale));
    KernelTriple kt;
    kt.a = e.values.squaredNorm() * rescale;
    kt.b = e.values.dot(e.derivatives) * rescale;
    kt.c = e.derivatives.squaredNorm() * rescale;
    return kt;
}

double tau_universality(int j, int k) {
    if (j < 0 || k < 0) {
        throw std::invalid_argument("tau_universality: indices must be >= 0");
    }
    if ((j + k) % 2 == 1) return 0.0;
    int half = (j - k) / 2;
    double sign = (half % 2 == 0) ? 1.0 : -1.0;
    return sign / (j + k + 1);
}

namespace {

double binom_small(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / i;
    return r;
}

// Universality prediction for the (r,s) kernel ratio at field ratio q = Q'/sigma.
double universality_prediction(int r, int s, double q) {
    double acc = 0.0;
    for (int j = 0; j <= r; ++j) {
        for (int k = 0; k <= s; ++k) {
            double tau = tau_universality(j, k);
            if (tau == 0.0) continue;
            acc += binom_small(r, j) * binom_small(s, k) * tau *
                   std::pow(kPi, j + k) * std::pow(q, r + s - j - k);
        }
    }
    return acc;
}

}  // namespace

UniversalityRatios universality_ratios(const RecurrenceTable& table,
                                       const FreudWeight& w, int n, double x) {
    const double an1 = mrs_number(w, n + 1);
    if (!(std::abs(x) < an1)) {
        throw std::domain_error("universality_ratios: |x| must be < a_{n+1}");
    }
    ScaledBasisEval e = eval_basis_scaled(table, n, x);
    const double sigma = equilibrium_density(w, n + 1, x);
    // W^2(x) * 2^{2 log2_scale} evaluated through the exponent to survive the
    // huge dynamic range of the unweighted kernel sums.
    const double wfactor = std::exp(2.0 * static_cast<double>(e.log2_scale) *
                                        std::numbers::ln2 -
                                    2.0 * w.potential(x));
    UniversalityRatios r;
    r.r00 = e.values.squaredNorm() * wfactor / sigma;
    r.r01 = e.values.dot(e.derivatives) * wfactor / (sigma * sigma);
    r.r11 = e.derivatives.squaredNorm() * wfactor / (sigma * sigma * sigma);
    const double q = w.potential_derivative(x) / sigma;
    r.pred00 = universality_prediction(0, 0, q);
    r.pred01 = universality_prediction(0, 1, q);
    r.pred11 = universality_prediction(1, 1, q);
    return r;
}

GaussRule gauss_rule(const RecurrenceTable& table, int m) {
    if (m < 1 || m > table.n_max()) {
        throw std::invalid_argument("gauss_rule: m must lie in [1, n_max]");
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd subdiag(std::max(m - 1, 0));
    for (int k = 1; k < m; ++k) subdiag[k - 1] = table.a(k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("gauss_rule: tridiagonal eigenvalue iteration failed");
    }
    GaussRule rule;
    rule.nodes = solver.eigenvalues().array();

    Eigen::MatrixXd q = weighted_basis_matrix(table, rule.nodes, m - 1);
    rule.weights_over_w2 = 1.0 / q.array().square().rowwise().sum();
    return rule;
}

Eigen::MatrixXd weighted_basis_matrix(const RecurrenceTable& table,
                                      const Eigen::ArrayXd& points, int n) {
    if (n < 0 || n > table.n_max()) {
        throw std::invalid_argument(
            "weighted_basis_matrix: n exceeds table capacity");
    }
    const FreudWeight w = table.weight();
    const auto npts = points.size();
    Eigen::MatrixXd q(npts, n + 1);
    Eigen::ArrayXd wvals = (-w.c() * points.abs().pow(w.lambda())).exp();
    q.col(0) = (wvals / std::sqrt(table.mu0())).matrix();
    if (n >= 1) {
        q.col(1) = (points * q.col(0).array() / table.a(1)).matrix();
    }
    for (int k = 1; k < n; ++k) {
        q.col(k + 1) = ((points * q.col(k).array() -
                         table.a(k) * q.col(k - 1).array()) /
                        table.a(k + 1))
                           .matrix();
    }
    return q;
}

nlohmann::ordered_json table_to_json(const RecurrenceTable& table) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kTableSchemaVersion;
    doc["lambda"] = table.lambda();
    doc["c"] = table.c();
    doc["mu0"] = table.mu0();
    doc["n_max"] = table.n_max();
    doc["offdiag"] = std::vector<double>(
        table.offdiag().data(), table.offdiag().data() + table.n_max());
    return doc;
}

RecurrenceTable table_from_json(const nlohmann::json& doc) {
    if (!doc.contains("schema_version") ||
        doc["schema_version"].get<int>() != kTableSchemaVersion) {
        throw std::invalid_argument("table_from_json: unsupported schema version");
    }
    auto offdiag_vec = doc.at("offdiag").get<std::vector<double>>();
    if (static_cast<int>(offdiag_vec.size()) != doc.at("n_max").get<int>()) {
        throw std::invalid_argument("table_from_json: offdiag length mismatch");
    }
    Eigen::ArrayXd offdiag =
        Eigen::Map<Eigen::ArrayXd>(offdiag_vec.data(), offdiag_vec.size());
    return RecurrenceTable(doc.at("lambda").get<double>(),
                           doc.at("c").get<double>(),
                           doc.at("mu0").get<double>(), std::move(offdiag));
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("FREUD_CACHE_DIR")) {
        return std::filesystem::path(env);
    }
    return std::filesystem::path(".freud-cache");
}

RecurrenceTable compute_recurrence_cached(
    const FreudWeight& w, int n_max, const StieltjesOptions& opts,
    std::optional<std::filesystem::path> cache_dir) {
    namespace fs = std::filesystem;
    fs::path dir = cache_dir.value_or(default_cache_dir());

    char keybuf[256];
    std::snprintf(keybuf, sizeof keybuf,
                  "lambda=%.17g;c=%.17g;n_max=%d;K=%.17g;q0=%d;tol=%.17g;force=%d",
                  w.lambda(), w.c(), n_max, opts.support_factor,
                  opts.initial_order, opts.stabilization_tol,
                  opts.force_stieltjes ? 1 : 0);
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = keybuf; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ull;
    }
    char name[64];
    std::snprintf(name, sizeof name, "recurrence_%016llx.json",
                  static_cast<unsigned long long>(h));
    fs::path file = dir / name;

    if (fs::exists(file)) {
        try {
            std::ifstream in(file);
            nlohmann::json doc = nlohmann::json::parse(in);
            if (doc.value("key", std::string()) == keybuf) {
                return table_from_json(doc);
            }
            // key mismatch: stale or colliding entry, fall through to recompute
        } catch (const std::exception&) {
            // unreadable cache entry, recompute below
        }
    }

    RecurrenceTable table = compute_recurrence(w, n_max, opts);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!ec) {
        nlohmann::ordered_json doc = table_to_json(table);
        doc["key"] = keybuf;
        std::ofstream out(file);
        out << doc.dump(1);
    }
    return table;
}

}  // namespace freud
