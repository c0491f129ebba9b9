// Command-line front end: recurrence tables, Kac-Rice expected-zero counts,
// Ullman distribution grids, Monte Carlo studies, and CSV/JSON export for the
// reproduction scripts. Exit codes: 0 success, 1 numeric failure, 2 usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "freud/errors.hpp"
#include "freud/kacrice.hpp"
#include "freud/montecarlo.hpp"
#include "freud/recurrence.hpp"
#include "freud/weight.hpp"
#include "freud/zeros.hpp"

namespace {

struct OutputTarget {
    std::string path = "-";

    // Writes through a buffer so a failed run never leaves a partial file.
    void write(const std::string& content) const {
        if (path == "-") {
            std::cout << content;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::invalid_argument("cannot open output file '" + path + "'");
        }
        out << content;
    }
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) {
            throw std::invalid_argument("bad integer list entry '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty integer list '" + text + "'");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) {
            throw std::invalid_argument("bad number list entry '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty number list '" + text + "'");
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct WeightArgs {
    double lambda = 2.0;
    double c = 0.5;

    freud::FreudWeight weight() const { return {c, lambda}; }
};

struct TableArgs {
    double support_factor = 1.5;
    int order = 64;
    bool force_stieltjes = false;
    bool no_cache = false;
    std::string cache_dir;

    freud::StieltjesOptions options() const {
        freud::StieltjesOptions opts;
        opts.support_factor = support_factor;
        opts.initial_order = order;
        opts.force_stieltjes = force_stieltjes;
        return opts;
    }

    freud::RecurrenceTable build(const freud::FreudWeight& w, int n_max) const {
        if (no_cache) {
            return freud::compute_recurrence(w, n_max, options());
        }
        std::optional<std::filesystem::path> dir;
        if (!cache_dir.empty()) dir = cache_dir;
        return freud::compute_recurrence_cached(w, n_max, options(), dir);
    }
};

void add_weight_args(CLI::App* cmd, WeightArgs& w) {
    cmd->add_option("--lambda", w.lambda, "Freud exponent lambda (> 1)")
        ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e6));
    cmd->add_option("--c", w.c, "field strength c (> 0)")
        ->check(CLI::PositiveNumber);
}

void add_table_args(CLI::App* cmd, TableArgs& t) {
    cmd->add_option("--support-factor", t.support_factor,
                    "Stieltjes grid support K (times a_{n_max})")
        ->check(CLI::Range(1.0, 16.0));
    cmd->add_option("--order", t.order, "initial Gauss-Legendre panel order")
        ->check(CLI::Range(8, 512));
    cmd->add_flag("--force-stieltjes", t.force_stieltjes,
                  "run the discretization even where a closed form exists");
    cmd->add_flag("--no-cache", t.no_cache, "skip the recurrence cache");
    cmd->add_option("--cache-dir", t.cache_dir,
                    "cache directory (default: FREUD_CACHE_DIR or .freud-cache)");
}

int run(int argc, char** argv) {
    CLI::App app{
        "Random Freud orthogonal polynomials: Kac-Rice expected real zeros, "
        "Ullman distribution, and Monte Carlo studies"};
    app.require_subcommand(1);

    // ---- expected-zeros ----
    WeightArgs ez_w;
    TableArgs ez_t;
    std::string ez_nlist = "50";
    OutputTarget ez_out;
    auto* ez = app.add_subcommand(
        "expected-zeros", "Kac-Rice expected real zeros over the whole line");
    add_weight_args(ez, ez_w);
    add_table_args(ez, ez_t);
    ez->add_option("--n", ez_nlist, "degree or comma list of degrees");
    ez->add_option("--out", ez_out.path, "output file ('-' = stdout)");

    // ---- intensity ----
    WeightArgs in_w;
    TableArgs in_t;
    int in_n = 50;
    double in_a = -1.0, in_b = 1.0;
    int in_points = 201;
    bool in_monomial = false;
    OutputTarget in_out;
    auto* in = app.add_subcommand("intensity",
                                  "zero-crossing intensity profile as CSV");
    add_weight_args(in, in_w);
    add_table_args(in, in_t);
    in->add_option("--n", in_n, "degree")->check(CLI::PositiveNumber);
    in->add_option("--a", in_a, "left endpoint");
    in->add_option("--b", in_b, "right endpoint");
    in->add_option("--points", in_points, "grid points")->check(CLI::Range(2, 1000000));
    in->add_flag("--monomial", in_monomial, "use the monomial basis instead");
    in->add_option("--out", in_out.path, "output file ('-' = stdout)");

    // ---- ullman ----
    double ul_lambda = 2.0;
    int ul_grid = 201;
    OutputTarget ul_out;
    auto* ul = app.add_subcommand("ullman",
                                  "Ullman distribution density/CDF grid as CSV");
    ul->add_option("--lambda", ul_lambda, "Freud exponent lambda (> 1)")
        ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e6));
    ul->add_option("--grid", ul_grid, "number of grid points on [-1, 1]")
        ->check(CLI::Range(2, 1000000));
    ul->add_option("--out", ul_out.path, "output file ('-' = stdout)");

    // ---- recurrence ----
    WeightArgs rc_w;
    TableArgs rc_t;
    int rc_nmax = 100;
    OutputTarget rc_out;
    auto* rc = app.add_subcommand(
        "recurrence", "compute/cache the three-term recurrence table (JSON)");
    add_weight_args(rc, rc_w);
    add_table_args(rc, rc_t);
    rc->add_option("--nmax", rc_nmax, "table size")->check(CLI::PositiveNumber);
    rc->add_option("--out", rc_out.path, "output file ('-' = stdout)");

    // ---- mc ----
    WeightArgs mc_w;
    TableArgs mc_t;
    int mc_n = 50;
    std::string mc_dist = "gaussian";
    double mc_sigma = 1.0;
    int mc_trials = 200;
    std::uint64_t mc_seed = 1;
    int mc_threads = 1;
    std::string mc_kind = "real-zeros";
    std::vector<std::string> mc_intervals;
    std::string mc_hist_csv;
    OutputTarget mc_out;
    auto* mc = app.add_subcommand("mc", "Monte Carlo trials (JSON summary)");
    add_weight_args(mc, mc_w);
    add_table_args(mc, mc_t);
    mc->add_option("--n", mc_n, "degree")->check(CLI::PositiveNumber);
    mc->add_option("--dist", mc_dist,
                   "gaussian|uniform|rademacher|complex-gaussian");
    mc->add_option("--sigma", mc_sigma, "Gaussian scale")
        ->check(CLI::PositiveNumber);
    mc->add_option("--trials", mc_trials, "number of trials")
        ->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_seed, "master seed");
    mc->add_option("--threads", mc_threads, "worker cap (output is identical "
                                            "for any thread count)")
        ->check(CLI::Range(1, 1024));
    mc->add_option("--kind", mc_kind, "real-zeros|measure|extremality");
    mc->add_option("--interval", mc_intervals,
                   "scaled interval 'a,b' for measure trials (repeatable)");
    mc->add_option("--hist-csv", mc_hist_csv,
                   "also write the scaled-zero histogram CSV here");
    mc->add_option("--out", mc_out.path, "output file ('-' = stdout)");

    // ---- universality ----
    WeightArgs un_w;
    TableArgs un_t;
    int un_n = 200;
    std::string un_x = "0";
    OutputTarget un_out;
    auto* un = app.add_subcommand(
        "universality", "scaled kernel ratios vs predictions as CSV");
    add_weight_args(un, un_w);
    add_table_args(un, un_t);
    un->add_option("--n", un_n, "degree")->check(CLI::PositiveNumber);
    un->add_option("--x", un_x, "evaluation point or comma list");
    un->add_option("--out", un_out.path, "output file ('-' = stdout)");

    // ---- zeros ----
    WeightArgs zr_w;
    TableArgs zr_t;
    int zr_n = 50;
    std::string zr_dist = "gaussian";
    double zr_sigma = 1.0;
    std::uint64_t zr_seed = 1;
    bool zr_polish = false;
    OutputTarget zr_out;
    auto* zr = app.add_subcommand("zeros",
                                  "all zeros of one seeded draw as CSV");
    add_weight_args(zr, zr_w);
    add_table_args(zr, zr_t);
    zr->add_option("--n", zr_n, "degree")->check(CLI::PositiveNumber);
    zr->add_option("--dist", zr_dist,
                   "gaussian|uniform|rademacher|complex-gaussian");
    zr->add_option("--sigma", zr_sigma, "Gaussian scale")
        ->check(CLI::PositiveNumber);
    zr->add_option("--seed", zr_seed, "draw seed");
    zr->add_flag("--polish", zr_polish, "one Newton step per zero");
    zr->add_option("--out", zr_out.path, "output file ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (ez->parsed()) {
        std::vector<int> degrees = parse_int_list(ez_nlist);
        int n_max = 0;
        for (int n : degrees) {
            if (n < 1) throw std::invalid_argument("degrees must be >= 1");
            n_max = std::max(n_max, n);
        }
        freud::FreudWeight w = ez_w.weight();
        freud::RecurrenceTable table = ez_t.build(w, n_max);
        std::ostringstream csv;
        csv << "n,expected_zeros,expected_zeros_over_n\n";
        for (int n : degrees) {
            double e = freud::expected_zeros_realline(w, table, n);
            csv << n << ',' << fmt(e) << ',' << fmt(e / n) << '\n';
        }
        ez_out.write(csv.str());
        return 0;
    }

    if (in->parsed()) {
        freud::BasisEvaluator basis = [&] {
            if (in_monomial) return freud::BasisEvaluator::monomial(in_n);
            freud::FreudWeight w = in_w.weight();
            freud::RecurrenceTable table = in_t.build(w, in_n);
            return freud::BasisEvaluator::orthonormal(table, in_n);
        }();
        freud::IntensityProfile prof =
            freud::intensity_profile(basis, in_a, in_b, in_points);
        std::ostringstream csv;
        prof.write_csv(csv);
        in_out.write(csv.str());
        return 0;
    }

    if (ul->parsed()) {
        freud::UllmanDistribution mu(ul_lambda);
        std::ostringstream csv;
        csv << "s,density,cdf\n";
        for (int i = 0; i < ul_grid; ++i) {
            double s = -1.0 + 2.0 * i / (ul_grid - 1);
            csv << fmt(s) << ',' << fmt(mu.density(s)) << ',' << fmt(mu.cdf(s))
                << '\n';
        }
        ul_out.write(csv.str());
        return 0;
    }

    if (rc->parsed()) {
        freud::FreudWeight w = rc_w.weight();
        freud::RecurrenceTable table = rc_t.build(w, rc_nmax);
        rc_out.write(freud::table_to_json(table).dump(1) + "\n");
        return 0;
    }

    if (mc->parsed()) {
        freud::FreudWeight w = mc_w.weight();
        freud::CoefficientDistribution dist =
            freud::CoefficientDistribution::parse(mc_dist, mc_sigma);
        std::vector<std::pair<double, double>> intervals;
        for (const auto& text : mc_intervals) {
            std::vector<double> ab = parse_double_list(text);
            if (ab.size() != 2 || !(ab[0] < ab[1])) {
                throw std::invalid_argument("bad --interval '" + text + "'");
            }
            intervals.emplace_back(ab[0], ab[1]);
        }
        if (intervals.empty()) intervals.emplace_back(-0.5, 0.5);

        nlohmann::ordered_json doc;
        if (mc_kind == "real-zeros") {
            freud::RecurrenceTable table = mc_t.build(w, mc_n);
            doc = freud::summary_to_json(freud::run_real_zero_trials(
                w, table, mc_n, dist, mc_trials, mc_seed, mc_threads));
        } else if (mc_kind == "measure") {
            freud::RecurrenceTable table = mc_t.build(w, mc_n);
            freud::TrialSummary s = freud::run_zero_measure_trials(
                w, table, mc_n, dist, mc_trials, mc_seed, intervals, mc_threads);
            if (!mc_hist_csv.empty()) {
                std::ofstream hist(mc_hist_csv);
                if (!hist) {
                    throw std::invalid_argument("cannot open '" + mc_hist_csv +
                                                "'");
                }
                s.empirical_measure.write_csv(hist);
            }
            doc = freud::summary_to_json(s);
        } else if (mc_kind == "extremality") {
            freud::RecurrenceTable table = mc_t.build(w, mc_n + 1);
            doc = freud::extremality_to_json(freud::extremality_check(
                w, table, mc_n, dist, mc_trials, mc_seed, mc_threads));
        } else {
            throw std::invalid_argument(
                "bad --kind (expected real-zeros|measure|extremality)");
        }
        mc_out.write(doc.dump(1) + "\n");
        return 0;
    }

    if (un->parsed()) {
        freud::FreudWeight w = un_w.weight();
        freud::RecurrenceTable table = un_t.build(w, un_n);
        std::ostringstream csv;
        csv << "x,r00,r01,r11,pred00,pred01,pred11\n";
        for (double x : parse_double_list(un_x)) {
            freud::UniversalityRatios r =
                freud::universality_ratios(table, w, un_n, x);
            csv << fmt(x) << ',' << fmt(r.r00) << ',' << fmt(r.r01) << ','
                << fmt(r.r11) << ',' << fmt(r.pred00) << ',' << fmt(r.pred01)
                << ',' << fmt(r.pred11) << '\n';
        }
        un_out.write(csv.str());
        return 0;
    }

    if (zr->parsed()) {
        freud::FreudWeight w = zr_w.weight();
        freud::RecurrenceTable table = zr_t.build(w, zr_n);
        freud::CoefficientDistribution dist =
            freud::CoefficientDistribution::parse(zr_dist, zr_sigma);
        freud::CoefficientVector cv =
            freud::sample_coefficients(dist, zr_n, zr_seed);
        freud::ZeroSet zs = freud::all_zeros(cv, table, zr_polish);
        std::ostringstream csv;
        zs.write_csv(csv);
        zr_out.write(csv.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const freud::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
