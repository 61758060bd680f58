#include "symstream/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace symstream {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 200000;

// t - log(1 + t), accurate near zero.
double t_minus_log1p(double t) {
  if (std::fabs(t) >= 0.5)
    return t - std::log1p(t);
  double power = t * t, sum = 0;
  for (int k = 2; k < 200; ++k) {
    const double term = power / k;
    sum += (k % 2 == 0) ? term : -term;
    if (std::fabs(term) < kEps * std::fabs(sum))
      break;
    power *= t;
  }
  return sum;
}

// lgamma(a) - [(a - 1/2) ln a - a + ln(2π)/2], for a >= 10.
double stirling_correction(double a) {
  const double r = 1.0 / a, r2 = r * r;
  return r * (1.0 / 12 -
              r2 * (1.0 / 360 -
                    r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 / 1188))));
}

// ln(x^a e^-x / Γ(a)). The direct form cancels badly for large a.
double log_prefactor(double a, double x) {
  if (a < 10)
    return a * std::log(x) - x - std::lgamma(a);
  const double t = (x - a) / a;
  return 0.5 * std::log(a / (2 * std::numbers::pi)) - a * t_minus_log1p(t) -
         stirling_correction(a);
}

// Lower regularized P(a, x) by its power series; best for x < a + 1.
double lower_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * kEps)
      break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Upper regularized Q(a, x) by continued fraction (modified Lentz); best for
// x >= a + 1.
double upper_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1 - a;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < kEps)
      break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

} // namespace

double erfc(double x) {
  if (std::isnan(x))
    throw std::domain_error("erfc: NaN argument");
  return std::erfc(x);
}

double igamc(double a, double x) {
  if (!(a > 0) || !(x >= 0) || std::isinf(a))
    throw std::domain_error("igamc: requires a > 0 and x >= 0");
  if (x == 0)
    return 1.0;
  if (std::isinf(x))
    return 0.0;
  if (x < a + 1)
    return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace symstream
