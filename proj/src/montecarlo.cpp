#include "freud/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "freud/errors.hpp"
#include "freud/quadrature.hpp"

namespace freud {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gaussian_pair(SplitMix64& rng, double sigma, double& second) {
    // Box-Muller; u1 in (0, 1] avoids log(0).
    double u1 = ((rng.next() >> 11) + 1) * 0x1.0p-53;
    double u2 = rng.uniform01();
    double r = sigma * std::sqrt(-2.0 * std::log(u1));
    second = r * std::sin(kTwoPi * u2);
    return r * std::cos(kTwoPi * u2);
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    if (v.size() % 2 == 1) return v[m];
    return 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 g(master + (stream + 1) * 0x9E3779B97F4A7C15ull);
    return g.next();
}

std::string CoefficientDistribution::name() const {
    switch (kind) {
        case DistKind::Gaussian: return "gaussian";
        case DistKind::Uniform: return "uniform";
        case DistKind::Rademacher: return "rademacher";
        case DistKind::ComplexGaussian: return "complex-gaussian";
    }
    return "?";
}

CoefficientDistribution CoefficientDistribution::parse(const std::string& text,
                                                       double sigma) {
    CoefficientDistribution d;
    d.sigma = sigma;
    if (text == "gaussian") {
        d.kind = DistKind::Gaussian;
    } else if (text == "uniform") {
        d.kind = DistKind::Uniform;
    } else if (text == "rademacher") {
        d.kind = DistKind::Rademacher;
    } else if (text == "complex-gaussian") {
        d.kind = DistKind::ComplexGaussian;
    } else {
        throw std::invalid_argument(
            "unknown coefficient distribution '" + text +
            "' (expected gaussian|uniform|rademacher|complex-gaussian)");
    }
    return d;
}

CoefficientVector sample_coefficients(const CoefficientDistribution& dist,
                                      int n, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample_coefficients: n must be >= 1");
    }
    SplitMix64 rng(seed);
    if (dist.kind == DistKind::ComplexGaussian) {
        Eigen::VectorXcd c(n + 1);
        const double s = dist.sigma / std::numbers::sqrt2;
        for (int k = 0; k <= n; ++k) {
            double im;
            double re = gaussian_pair(rng, s, im);
            c[k] = {re, im};
        }
        return CoefficientVector::from_complex(std::move(c));
    }
    Eigen::VectorXd c(n + 1);
    switch (dist.kind) {
        case DistKind::Gaussian: {
            for (int k = 0; k <= n; k += 2) {
                double z1;
                double z0 = gaussian_pair(rng, dist.sigma, z1);
                c[k] = z0;
                if (k + 1 <= n) c[k + 1] = z1;
            }
            break;
        }
        case DistKind::Uniform: {
            for (int k = 0; k <= n; ++k) c[k] = 2.0 * rng.uniform01() - 1.0;
            break;
        }
        case DistKind::Rademacher: {
            for (int k = 0; k <= n; ++k) c[k] = (rng.next() >> 63) ? 1.0 : -1.0;
            break;
        }
        case DistKind::ComplexGaussian:
            break;  // handled above
    }
    return CoefficientVector::from_real(std::move(c));
}

void Histogram2D::add(std::complex<double> z) {
    if (counts.empty()) init();
    if (z.real() < re_min || z.real() >= re_max || z.imag() < im_min ||
        z.imag() >= im_max) {
        return;
    }
    int i = static_cast<int>((z.real() - re_min) / (re_max - re_min) * re_bins);
    int j = static_cast<int>((z.imag() - im_min) / (im_max - im_min) * im_bins);
    i = std::min(i, re_bins - 1);
    j = std::min(j, im_bins - 1);
    counts[static_cast<std::size_t>(i) * im_bins + j] += 1;
}

void Histogram2D::write_csv(std::ostream& out) const {
    out << "re_bin,im_bin,count\n";
    char line[120];
    const double dre = (re_max - re_min) / re_bins;
    const double dim = (im_max - im_min) / im_bins;
    for (int i = 0; i < re_bins; ++i) {
        for (int j = 0; j < im_bins; ++j) {
            std::int64_t cnt = counts.empty()
                                   ? 0
                                   : counts[static_cast<std::size_t>(i) * im_bins + j];
            std::snprintf(line, sizeof line, "%.17g,%.17g,%lld\n",
                          re_min + (i + 0.5) * dre, im_min + (j + 0.5) * dim,
                          static_cast<long long>(cnt));
            out << line;
        }
    }
}

nlohmann::ordered_json summary_to_json(const TrialSummary& s) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = s.kind;
    doc["n"] = s.n;
    doc["trials"] = s.trials;
    doc["dist"] = s.dist;
    doc["seed"] = s.seed;
    if (s.kind == "real-zeros") {
        doc["mean_real_zeros"] = s.mean_real_zeros;
        doc["std_error"] = s.std_error;
    } else {
        doc["mean_real_zeros"] = s.mean_real_zeros;
        doc["std_error"] = s.std_error;
        doc["ks_real"] = s.ks_real;
        doc["outside_mass"] = s.outside_mass;
        nlohmann::ordered_json masses = nlohmann::ordered_json::array();
        for (const auto& m : s.interval_masses) {
            masses.push_back({{"a", m[0]}, {"b", m[1]}, {"tau_bar", m[2]}});
        }
        doc["interval_masses"] = masses;
        doc["histogram"] = {{"re_min", s.empirical_measure.re_min},
                            {"re_max", s.empirical_measure.re_max},
                            {"im_min", s.empirical_measure.im_min},
                            {"im_max", s.empirical_measure.im_max},
                            {"re_bins", s.empirical_measure.re_bins},
                            {"im_bins", s.empirical_measure.im_bins},
                            {"counts", s.empirical_measure.counts}};
    }
    return doc;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

TrialSummary run_real_zero_trials(const FreudWeight& w,
                                  const RecurrenceTable& table, int n,
                                  const CoefficientDistribution& dist,
                                  int trials, std::uint64_t seed, int threads) {
    if (trials < 2) {
        throw std::invalid_argument("run_real_zero_trials: trials must be >= 2");
    }
    if (n < 1 || n > table.n_max()) {
        throw std::invalid_argument("run_real_zero_trials: n out of range");
    }
    if (!dist.is_real()) {
        throw std::invalid_argument(
            "run_real_zero_trials: requires a real coefficient law");
    }
    const double an1 = mrs_number(w, n + 1);
    const ScanGrid grid = make_scan_grid(w, n, -2.0 * an1, 2.0 * an1);

    std::vector<int> counts(trials);
    parallel_for(trials, threads, [&](int t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        CoefficientVector cv = sample_coefficients(dist, n, trial_seed);
        RealZeroCount rc = real_zero_count(cv.real_values(), table, grid);
        if (rc.count > n || (n - rc.count) % 2 != 0) {
            std::ostringstream msg;
            msg << "run_real_zero_trials: draw with seed " << trial_seed
                << " produced " << rc.count << " real zeros for degree " << n
                << " (parity/bound violation)";
            throw NumericError(msg.str());
        }
        counts[t] = rc.count;
    });

    long long total = 0;
    for (int cnt : counts) total += cnt;
    const double mean = static_cast<double>(total) / trials;
    std::vector<double> sq(trials);
    for (int t = 0; t < trials; ++t) {
        double dvt = counts[t] - mean;
        sq[t] = dvt * dvt;
    }
    const double var = pairwise_sum(sq) / (trials - 1);

    TrialSummary s;
    s.kind = "real-zeros";
    s.n = n;
    s.trials = trials;
    s.dist = dist.name();
    s.seed = seed;
    s.mean_real_zeros = mean;
    s.std_error = std::sqrt(var / trials);
    return s;
}

TrialSummary run_zero_measure_trials(
    const FreudWeight& w, const RecurrenceTable& table, int n,
    const CoefficientDistribution& dist, int trials, std::uint64_t seed,
    const std::vector<std::pair<double, double>>& intervals, int threads) {
    if (trials < 1) {
        throw std::invalid_argument("run_zero_measure_trials: trials must be >= 1");
    }
    if (n < 1 || n > table.n_max()) {
        throw std::invalid_argument("run_zero_measure_trials: n out of range");
    }
    const std::size_t n_int = intervals.size();

    std::vector<Eigen::VectorXcd> scaled(trials);
    std::vector<double> outside(trials);
    std::vector<double> near_real_count(trials);
    std::vector<std::vector<double>> tau(n_int, std::vector<double>(trials));
    parallel_for(trials, threads, [&](int t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        CoefficientVector cv = sample_coefficients(dist, n, trial_seed);
        ZeroSet zs = all_zeros(cv, table);
        EmpiricalMeasure m = counting_measure(zs);
        const double inside = m.rectangle_mass(-1.1, 1.1, -0.1, 0.1);
        outside[t] = 1.0 - inside;
        near_real_count[t] =
            m.interval_mass(-2.0, 2.0, 1e-8) * zs.n;  // diagnostics only
        for (std::size_t j = 0; j < n_int; ++j) {
            tau[j][t] = m.interval_mass(intervals[j].first, intervals[j].second,
                                        0.05);
        }
        scaled[t] = std::move(zs.scaled);
    });

    TrialSummary s;
    s.kind = "measure";
    s.n = n;
    s.trials = trials;
    s.dist = dist.name();
    s.seed = seed;
    s.outside_mass = pairwise_sum(outside) / trials;
    s.mean_real_zeros = pairwise_sum(near_real_count) / trials;
    {
        std::vector<double> sq(trials);
        for (int t = 0; t < trials; ++t) {
            double dvt = near_real_count[t] - s.mean_real_zeros;
            sq[t] = dvt * dvt;
        }
        s.std_error = trials > 1
                          ? std::sqrt(pairwise_sum(sq) / (trials - 1) / trials)
                          : 0.0;
    }
    for (std::size_t j = 0; j < n_int; ++j) {
        s.interval_masses.push_back({intervals[j].first, intervals[j].second,
                                     pairwise_sum(tau[j]) / trials});
    }

    // KS statistic of all scaled-zero real parts against the Ullman CDF.
    std::vector<double> re;
    re.reserve(static_cast<std::size_t>(trials) * n);
    s.empirical_measure.init();
    for (int t = 0; t < trials; ++t) {
        for (Eigen::Index i = 0; i < scaled[t].size(); ++i) {
            re.push_back(scaled[t][i].real());
            s.empirical_measure.add(scaled[t][i]);
        }
    }
    std::sort(re.begin(), re.end());
    UllmanDistribution mu(w.lambda());
    double ks = 0.0;
    const double total = static_cast<double>(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        double f = mu.cdf(re[i]);
        ks = std::max(ks, std::abs((i + 1) / total - f));
        ks = std::max(ks, std::abs(i / total - f));
    }
    s.ks_real = ks;
    return s;
}

nlohmann::ordered_json extremality_to_json(const ExtremalityStats& s) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "extremality";
    doc["n"] = s.n;
    doc["trials"] = s.trials;
    doc["dist"] = s.dist;
    doc["seed"] = s.seed;
    doc["l2_identity_max_rel_err"] = s.l2_identity_max_rel_err;
    doc["sandwich_ok"] = s.sandwich_ok;
    doc["median_supnorm_root"] = s.median_supnorm_root;
    doc["median_monic_root"] = s.median_monic_root;
    doc["robin_limit"] = s.robin_limit;
    doc["supnorm_roots"] = s.supnorm_roots;
    doc["monic_roots"] = s.monic_roots;
    return doc;
}

ExtremalityStats extremality_check(const FreudWeight& w,
                                   const RecurrenceTable& table, int n,
                                   const CoefficientDistribution& dist,
                                   int trials, std::uint64_t seed, int threads) {
    if (trials < 1) {
        throw std::invalid_argument("extremality_check: trials must be >= 1");
    }
    if (n < 1 || n + 1 > table.n_max()) {
        throw std::invalid_argument(
            "extremality_check: needs n + 1 <= table.n_max() for the Gauss rule");
    }
    const GaussRule rule = gauss_rule(table, n + 1);
    const Eigen::MatrixXd q_nodes = weighted_basis_matrix(table, rule.nodes, n);

    const double an = mrs_number(w, n);
    const int grid_pts = std::max(4096, 16 * n) + 1;
    const Eigen::ArrayXd grid =
        Eigen::ArrayXd::LinSpaced(grid_pts, -2.0 * an, 2.0 * an);
    const Eigen::MatrixXd q_grid = weighted_basis_matrix(table, grid, n);

    ExtremalityStats s;
    s.n = n;
    s.trials = trials;
    s.dist = dist.name();
    s.seed = seed;
    s.robin_limit = std::exp(-robin_constant(w.lambda()));
    s.supnorm_roots.resize(trials);
    s.monic_roots.resize(trials);

    std::vector<double> l2_err(trials);
    std::vector<char> sandwich(trials, 1);
    const double log_gamma_n = table.log_leading(n);
    parallel_for(trials, threads, [&](int t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        CoefficientVector cv = sample_coefficients(dist, n, trial_seed);

        double coeff_norm_sq, coeff_max, lead_abs, sup;
        if (cv.is_real) {
            Eigen::VectorXd c = cv.real_values();
            coeff_norm_sq = c.squaredNorm();
            coeff_max = c.cwiseAbs().maxCoeff();
            lead_abs = std::abs(c[n]);
            Eigen::ArrayXd at_nodes = (q_nodes * c).array();
            double l2 = (rule.weights_over_w2 * at_nodes.square()).sum();
            l2_err[t] = std::abs(l2 - coeff_norm_sq) / coeff_norm_sq;
            double l2_sqrt = std::sqrt(l2);
            sandwich[t] = coeff_max <= l2_sqrt * (1 + 1e-12) &&
                          l2_sqrt <= (n + 1) * coeff_max * (1 + 1e-12);
            sup = (q_grid * c).cwiseAbs().maxCoeff();
        } else {
            const Eigen::VectorXcd& c = cv.values;
            coeff_norm_sq = c.squaredNorm();
            coeff_max = c.cwiseAbs().maxCoeff();
            lead_abs = std::abs(c[n]);
            Eigen::VectorXcd at_nodes = q_nodes * c;
            double l2 =
                (rule.weights_over_w2 * at_nodes.array().abs2()).sum();
            l2_err[t] = std::abs(l2 - coeff_norm_sq) / coeff_norm_sq;
            double l2_sqrt = std::sqrt(l2);
            sandwich[t] = coeff_max <= l2_sqrt * (1 + 1e-12) &&
                          l2_sqrt <= (n + 1) * coeff_max * (1 + 1e-12);
            sup = (q_grid * c).cwiseAbs().maxCoeff();
        }
        // ||P_n W||^{1/n} and the monic normalization
        // ||w^n Q_n*|| = ||P_n W|| / (|c_n| gamma_n a_n^n), in logs.
        s.supnorm_roots[t] = std::exp(std::log(sup) / n);
        double log_monic = std::log(sup) - std::log(lead_abs) - log_gamma_n -
                           n * std::log(an);
        s.monic_roots[t] = std::exp(log_monic / n);
    });

    s.l2_identity_max_rel_err =
        *std::max_element(l2_err.begin(), l2_err.end());
    s.sandwich_ok =
        std::all_of(sandwich.begin(), sandwich.end(), [](char b) { return b; });
    s.median_supnorm_root = median_of(s.supnorm_roots);
    s.median_monic_root = median_of(s.monic_roots);
    return s;
}

}  // namespace freud
