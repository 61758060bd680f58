#pragma once

namespace symstream {

/// Complementary error function. NaN input throws std::domain_error.
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a), for a > 0 and
/// x >= 0. Other inputs throw std::domain_error.
double igamc(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace symstream
