#include "symstream/battery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symstream/kernels.hpp"
#include "symstream/special.hpp"

namespace symstream::stats {

namespace {

void require_nonempty(const BitStream &bits, const char *test) {
  if (bits.empty())
    throw std::invalid_argument(std::string(test) + ": empty bit stream");
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

// ψ²_m = 2^m / n · Σ c_i² − n; zero for m == 0.
double psi_squared(const BitStream &bits, unsigned m) {
  if (m == 0)
    return 0.0;
  const auto counts = kernels::pattern_counts(bits.bits(), m);
  long double sum = 0;
  for (auto c : counts)
    sum += static_cast<long double>(c) * static_cast<long double>(c);
  const auto n = static_cast<long double>(bits.size());
  return static_cast<double>(std::ldexp(sum, static_cast<int>(m)) / n - n);
}

// Σ (c_i/n) ln(c_i/n) over nonzero counts.
double phi(const BitStream &bits, unsigned m) {
  if (m == 0)
    return 0.0;
  const auto counts = kernels::pattern_counts(bits.bits(), m);
  const double n = static_cast<double>(bits.size());
  double sum = 0;
  for (auto c : counts) {
    if (c == 0)
      continue;
    const double pi = static_cast<double>(c) / n;
    sum += pi * std::log(pi);
  }
  return sum;
}

std::size_t floor_log2(std::size_t n) {
  std::size_t r = 0;
  while (n >>= 1)
    ++r;
  return r;
}

} // namespace

double monobit(const BitStream &bits) {
  require_nonempty(bits, "monobit");
  const auto n = static_cast<double>(bits.size());
  const auto ones = static_cast<double>(kernels::count_ones(bits.bits()));
  const double s = 2 * ones - n;
  return clamp_p(erfc(std::fabs(s) / std::sqrt(2 * n)));
}

double block_frequency(const BitStream &bits, std::size_t block) {
  require_nonempty(bits, "block_frequency");
  if (block < 2)
    throw std::invalid_argument("block_frequency: block length must be >= 2");
  if (block > bits.size())
    throw std::invalid_argument("block_frequency: block longer than stream");
  const auto blocks = static_cast<double>(bits.size() / block);
  // χ² = 4M Σ (π_i − 1/2)² = Σ (2·ones_i − M)² / M
  const double chi2 =
      static_cast<double>(kernels::block_imbalance(bits.bits(), block)) /
      static_cast<double>(block);
  return clamp_p(igamc(blocks / 2, chi2 / 2));
}

std::optional<double> runs(const BitStream &bits) {
  require_nonempty(bits, "runs");
  const auto n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(kernels::count_ones(bits.bits())) / n;
  if (std::fabs(pi - 0.5) >= 2 / std::sqrt(n))
    return std::nullopt;
  const double v = static_cast<double>(kernels::transitions(bits.bits())) + 1;
  const double q = pi * (1 - pi);
  return clamp_p(
      erfc(std::fabs(v - 2 * n * q) / (2 * std::sqrt(2 * n) * q)));
}

double longest_run(const BitStream &bits) {
  if (bits.size() < 128)
    throw std::invalid_argument("longest_run: needs at least 128 bits");
  const auto h = kernels::longest_run_histogram(bits.bits());
  const double blocks = static_cast<double>(bits.size() / 8);
  double chi2 = 0;
  for (int i = 0; i < 4; ++i) {
    const double expected = blocks * kLongestRunProbabilities[i];
    const double d = static_cast<double>(h[i]) - expected;
    chi2 += d * d / expected;
  }
  return clamp_p(igamc(1.5, chi2 / 2));
}

double cumulative_sums(const BitStream &bits, Direction dir) {
  require_nonempty(bits, "cumulative_sums");
  const auto w = kernels::walk_extremes(bits.bits());
  std::int64_t z;
  if (dir == Direction::forward) {
    z = std::max(std::abs(w.max_prefix), std::abs(w.min_prefix));
  } else {
    // Backward partial sums are S_n − S_j for j = n−1..0.
    z = std::max(w.total - std::min<std::int64_t>(0, w.min_prefix),
                 std::max<std::int64_t>(0, w.max_prefix) - w.total);
  }
  const auto n = static_cast<std::int64_t>(bits.size());
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double zd = static_cast<double>(z);
  // Summation limits use truncating integer division, as in the reference
  // C implementation.
  double sum1 = 0, sum2 = 0;
  for (std::int64_t k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k)
    sum1 += normal_cdf((4 * k + 1) * zd / sqrt_n) -
            normal_cdf((4 * k - 1) * zd / sqrt_n);
  for (std::int64_t k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k)
    sum2 += normal_cdf((4 * k + 3) * zd / sqrt_n) -
            normal_cdf((4 * k + 1) * zd / sqrt_n);
  return clamp_p(1 - sum1 + sum2);
}

SerialResult serial(const BitStream &bits, unsigned m) {
  require_nonempty(bits, "serial");
  if (m < 2 || m > 24)
    throw std::invalid_argument("serial: pattern length must be in [2, 24]");
  SerialResult r{};
  r.psi2_m = psi_squared(bits, m);
  r.psi2_m1 = psi_squared(bits, m - 1);
  r.psi2_m2 = psi_squared(bits, m - 2);
  r.del1 = r.psi2_m - r.psi2_m1;
  r.del2 = r.psi2_m - 2 * r.psi2_m1 + r.psi2_m2;
  r.p1 = clamp_p(igamc(std::ldexp(1.0, static_cast<int>(m) - 2),
                       std::max(0.0, r.del1) / 2));
  r.p2 = clamp_p(igamc(std::ldexp(1.0, static_cast<int>(m) - 3),
                       std::max(0.0, r.del2) / 2));
  return r;
}

ApEnResult approximate_entropy(const BitStream &bits, unsigned m) {
  require_nonempty(bits, "approximate_entropy");
  if (m < 1 || m > 23)
    throw std::invalid_argument(
        "approximate_entropy: pattern length must be in [1, 23]");
  ApEnResult r{};
  r.phi_m = phi(bits, m);
  r.phi_m1 = phi(bits, m + 1);
  r.apen = r.phi_m - r.phi_m1;
  const double n = static_cast<double>(bits.size());
  r.chi2 = 2 * n * (std::log(2.0) - r.apen);
  r.p = clamp_p(igamc(std::ldexp(1.0, static_cast<int>(m) - 1),
                      std::max(0.0, r.chi2) / 2));
  return r;
}

namespace {

TestResult run_one(const std::string &name, const BitStream &bits,
                   const BatteryConfig &cfg) {
  TestResult t;
  t.name = name;
  const std::size_t n = bits.size();
  const std::size_t lg = floor_log2(std::max<std::size_t>(n, 1));
  try {
    if (name == "monobit") {
      t.advisory = n < 100;
      t.p_values = {monobit(bits)};
    } else if (name == "block_frequency") {
      t.params["M"] = static_cast<std::int64_t>(cfg.block_frequency_m);
      t.p_values = {block_frequency(bits, cfg.block_frequency_m)};
    } else if (name == "runs") {
      t.advisory = n < 100;
      if (auto p = runs(bits))
        t.p_values = {*p};
      else
        t.failure_reason = "not applicable: ones proportion fails the "
                           "frequency prerequisite";
    } else if (name == "longest_run") {
      t.params["M"] = 8;
      t.p_values = {longest_run(bits)};
    } else if (name == "cumulative_sums") {
      t.advisory = n < 100;
      t.p_values = {cumulative_sums(bits, Direction::forward),
                    cumulative_sums(bits, Direction::backward)};
    } else if (name == "serial") {
      const unsigned m = cfg.serial_m;
      t.params["m"] = m;
      if (m < 2 || m + 2 >= lg)
        t.failure_reason = "not applicable: serial needs 2 <= m < floor(log2 n) - 2";
      else {
        const auto r = serial(bits, m);
        t.p_values = {r.p1, r.p2};
      }
    } else if (name == "approximate_entropy") {
      const unsigned m = cfg.approximate_entropy_m;
      t.params["m"] = m;
      if (m < 1 || m + 3 >= lg)
        t.failure_reason =
            "not applicable: approximate entropy needs m + 1 < floor(log2 n) - 2";
      else
        t.p_values = {approximate_entropy(bits, m).p};
    } else {
      throw std::logic_error("unreachable");
    }
  } catch (const std::invalid_argument &e) {
    t.failure_reason = std::string("not applicable: ") + e.what();
    t.p_values.clear();
  }
  t.pass = t.failure_reason.empty() && !t.p_values.empty() &&
           std::all_of(t.p_values.begin(), t.p_values.end(),
                       [&](double p) { return p >= cfg.alpha; });
  return t;
}

} // namespace

TestReport battery(const BitStream &bits, const BatteryConfig &config) {
  for (const auto &name : config.tests)
    if (std::find(kAllTests.begin(), kAllTests.end(), name) == kAllTests.end())
      throw std::invalid_argument("unknown test: " + name);
  if (!(config.alpha > 0 && config.alpha < 1))
    throw std::invalid_argument("alpha must lie in (0, 1)");

  TestReport report;
  report.alpha = config.alpha;
  for (const auto &name : config.tests)
    report.tests.push_back(run_one(name, bits, config));
  report.overall_pass =
      !report.tests.empty() &&
      std::all_of(report.tests.begin(), report.tests.end(),
                  [](const TestResult &t) { return t.pass; });
  return report;
}

} // namespace symstream::stats
