#include "freud/special.hpp"

#include <cmath>
#include <stdexcept>

namespace freud {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kSqrtTwoPi = 2.5066282746310005024;
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

double lanczos_sum(double x) {
    // Series argument z = x - 1; caller guarantees x >= 1.
    double z = x - 1.0;
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        s += kLanczos[i] / (z + i);
    }
    return s;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    if (x < 1.0) {
        // log Gamma(x) = log Gamma(x+1) - log(x), keeps the series argument >= 1.
        return log_gamma(x + 1.0) - std::log(x);
    }
    double z = x - 1.0;
    double t = z + kLanczosG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_fn: argument must be positive");
    }
    if (x < 1.0) {
        return gamma_fn(x + 1.0) / x;
    }
    if (x > 140.0) {
        return std::exp(log_gamma(x));
    }
    double z = x - 1.0;
    double t = z + kLanczosG + 0.5;
    return kSqrtTwoPi * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(x);
}

}  // namespace freud
