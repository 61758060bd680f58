#pragma once

// Repeated trials of: sample a key, derive the byte state, generate a stream,
// run the battery. Reports how often the battery passes against how often y
// is a derangement.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "symstream/battery.hpp"
#include "symstream/permutation.hpp"

namespace symstream {

enum class Randomize { both, y };

struct ExperimentConfig {
  std::size_t trials = 200;
  std::size_t degree = 64;
  std::size_t stream_bytes = std::size_t{1} << 20;
  bool derangements_only = false;
  Randomize randomize = Randomize::both;
  stats::BatteryConfig battery;
  std::uint64_t master_seed = 0;
  std::string passphrase = "symstream";
  /// Replace every sampled y with the identity.
  bool force_identity_y = false;
  /// 0 means the SYMSTREAM_THREADS environment variable, then all cores.
  int threads = 0;
};

/// Throws std::invalid_argument if trials == 0, the degree is unusable, or
/// stream_bytes < 16 * degree.
void validate(const ExperimentConfig &config);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string x_digest;
  std::string y_digest;
  bool y_is_derangement = false;
  std::size_t y_fixed_points = 0;
  stats::TestReport report;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  double pass_fraction = 0;
  double derangement_fraction = 0;
  /// Among trials where y has a fixed point; 0 when there are none.
  double fixed_point_fail_fraction = 0;
  std::size_t fixed_point_trials = 0;
  double predicted_exact = 0;
  double predicted_independent = 0;
};

/// Threads to use: explicit > 0 wins, then SYMSTREAM_THREADS (0 = auto).
int resolve_threads(int requested);

ExperimentSummary run_experiment(const ExperimentConfig &config);

/// Short hex tag identifying a permutation.
std::string permutation_digest(const Permutation &p);

nlohmann::json to_json(const ExperimentSummary &s);

} // namespace symstream
