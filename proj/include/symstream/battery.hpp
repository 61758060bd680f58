#pragma once

// Seven frequency/structure tests in the SP 800-22 family and a battery that
// runs them with a single significance level.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symstream/bitstream.hpp"

namespace symstream::stats {

/// Exact probabilities of the longest run of ones in an 8-bit block falling
/// in {<=1, 2, 3, >=4}: 55, 94, 59 and 48 out of 256.
inline constexpr double kLongestRunProbabilities[4] = {55.0 / 256, 94.0 / 256,
                                                       59.0 / 256, 48.0 / 256};

enum class Direction { forward, backward };

// Each test throws std::invalid_argument for inputs it cannot evaluate at all
// (empty stream, block longer than the stream, pattern length out of range).

double monobit(const BitStream &bits);
double block_frequency(const BitStream &bits, std::size_t block);
/// nullopt when the ones proportion is too far from 1/2 for the test to apply.
std::optional<double> runs(const BitStream &bits);
/// Requires at least 128 bits.
double longest_run(const BitStream &bits);
double cumulative_sums(const BitStream &bits, Direction dir);

struct SerialResult {
  double psi2_m, psi2_m1, psi2_m2;
  double del1, del2;
  double p1, p2;
};
/// 2 <= m <= 24.
SerialResult serial(const BitStream &bits, unsigned m);

struct ApEnResult {
  double phi_m, phi_m1;
  double apen;
  double chi2;
  double p;
};
/// 1 <= m <= 23.
ApEnResult approximate_entropy(const BitStream &bits, unsigned m);

// Battery -------------------------------------------------------------------

inline const std::vector<std::string> kAllTests = {
    "monobit",         "block_frequency", "runs",
    "longest_run",     "cumulative_sums", "serial",
    "approximate_entropy"};

struct BatteryConfig {
  std::vector<std::string> tests = kAllTests;
  std::size_t block_frequency_m = 128;
  unsigned serial_m = 2;
  unsigned approximate_entropy_m = 2;
  double alpha = 0.01;
};

struct TestResult {
  std::string name;
  std::map<std::string, std::int64_t> params;
  std::vector<double> p_values;
  bool pass = false;
  /// Why the test could not be evaluated; empty when it ran.
  std::string failure_reason;
  /// Below the recommended length; the verdict still counts.
  bool advisory = false;
};

struct TestReport {
  double alpha = 0.01;
  std::vector<TestResult> tests;
  bool overall_pass = false;
};

/// Runs the configured tests. A test that cannot be evaluated is recorded as
/// a failure with its reason. Unknown test names throw std::invalid_argument.
TestReport battery(const BitStream &bits, const BatteryConfig &config = {});

} // namespace symstream::stats
