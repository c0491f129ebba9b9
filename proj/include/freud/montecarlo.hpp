#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "freud/recurrence.hpp"
#include "freud/weight.hpp"
#include "freud/zeros.hpp"

namespace freud {

/// SplitMix64: tiny counter-friendly generator used for all sampling so runs
/// are bit-reproducible across platforms and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Stream seed for trial t of a run with the given master seed; independent
/// of the order in which trials execute.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Coefficient laws. Every kind satisfies E[|log|c_0||] < infinity:
///   gaussian / complex-gaussian - log-moment of a (complex) normal is finite;
///   uniform(-1,1)               - integrable log singularity at 0;
///   rademacher                  - |c_0| = 1 so log|c_0| = 0.
enum class DistKind { Gaussian, Uniform, Rademacher, ComplexGaussian };

struct CoefficientDistribution {
    DistKind kind = DistKind::Gaussian;
    double sigma = 1.0;  // used by the Gaussian kinds

    bool is_real() const { return kind != DistKind::ComplexGaussian; }
    std::string name() const;
    static CoefficientDistribution parse(const std::string& text,
                                         double sigma = 1.0);
};

/// n+1 i.i.d. coefficients, deterministic in (dist, n, seed).
CoefficientVector sample_coefficients(const CoefficientDistribution& dist,
                                      int n, std::uint64_t seed);

/// 2-D count histogram of scaled zeros (CSV: re_bin, im_bin, count).
struct Histogram2D {
    double re_min = -1.25, re_max = 1.25;
    double im_min = -0.25, im_max = 0.25;
    int re_bins = 100, im_bins = 20;
    std::vector<std::int64_t> counts;  // row-major, re index major

    void init() { counts.assign(static_cast<std::size_t>(re_bins) * im_bins, 0); }
    void add(std::complex<double> z);
    void write_csv(std::ostream& out) const;
};

/// Aggregated Monte Carlo statistics. Real-zero runs fill the count block;
/// zero-measure runs fill the measure block; kind records which.
struct TrialSummary {
    std::string kind;
    int n = 0;
    int trials = 0;
    std::string dist;
    std::uint64_t seed = 0;

    // real-zero block
    double mean_real_zeros = 0.0;
    double std_error = 0.0;

    // measure block
    double ks_real = 0.0;
    double outside_mass = 0.0;
    std::vector<std::array<double, 3>> interval_masses;  // {a, b, tau_bar}
    Histogram2D empirical_measure;
};

nlohmann::ordered_json summary_to_json(const TrialSummary& s);

/// Mean and standard error of the sign-scan real-zero count over
/// [-2 a_{n+1}, 2 a_{n+1}]. Requires trials >= 2 and a real coefficient law.
/// Each draw is checked against count <= n and count == n (mod 2); a
/// violating draw aborts the run naming the failing seed.
TrialSummary run_real_zero_trials(const FreudWeight& w,
                                  const RecurrenceTable& table, int n,
                                  const CoefficientDistribution& dist,
                                  int trials, std::uint64_t seed,
                                  int threads = 1);

/// Aggregates scaled zeros across trials: Kolmogorov-Smirnov distance of the
/// real parts against the Ullman CDF, the fraction outside the box
/// [-1.1, 1.1] x [-0.1, 0.1], per-interval masses (|Im| < 0.05 projection),
/// and the 2-D histogram.
TrialSummary run_zero_measure_trials(
    const FreudWeight& w, const RecurrenceTable& table, int n,
    const CoefficientDistribution& dist, int trials, std::uint64_t seed,
    const std::vector<std::pair<double, double>>& intervals = {{-0.5, 0.5}},
    int threads = 1);

/// Weighted sup-norm and extremality statistics of the draws.
struct ExtremalityStats {
    int n = 0;
    int trials = 0;
    std::string dist;
    std::uint64_t seed = 0;

    double l2_identity_max_rel_err = 0.0;  // Gauss quadrature vs sum |c_k|^2
    bool sandwich_ok = true;  // max|c_k| <= sqrt(L2) <= (n+1) max|c_k| per draw
    double median_supnorm_root = 0.0;   // median of ||P_n W||^{1/n}
    double median_monic_root = 0.0;     // median of ||w^n Q_n*||^{1/n}
    double robin_limit = 0.0;           // e^{-F_w}
    std::vector<double> supnorm_roots;  // per draw, trial order
    std::vector<double> monic_roots;
};

nlohmann::ordered_json extremality_to_json(const ExtremalityStats& s);

/// Per draw: checks the L2 identity Integral |P_n|^2 W^2 = sum |c_k|^2 by
/// Gauss quadrature, the coefficient sandwich bound, and evaluates
/// ||P_n W||^{1/n} on a dense grid of [-2 a_n, 2 a_n] together with the
/// monic normalization ||w^n Q_n*||^{1/n} (all sup-norm work runs on weighted
/// basis values, which stay bounded where raw p_k would overflow).
/// Needs table.n_max() >= n + 1 for the quadrature rule.
ExtremalityStats extremality_check(const FreudWeight& w,
                                   const RecurrenceTable& table, int n,
                                   const CoefficientDistribution& dist,
                                   int trials, std::uint64_t seed,
                                   int threads = 1);

/// Runs fn(0..count-1) on up to `threads` workers; callers store results by
/// index so aggregation order (and output) is independent of scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace freud
