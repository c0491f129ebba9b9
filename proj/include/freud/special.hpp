#pragma once

namespace freud {

/// Natural log of the gamma function for x > 0.
/// Lanczos approximation (g = 7, 9 terms), relative accuracy ~1e-15 over
/// the range used by the weight computations.
double log_gamma(double x);

/// Gamma function for x > 0. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

}  // namespace freud
