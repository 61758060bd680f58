#include "symstream/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <stdexcept>

#include <omp.h>

#include "symstream/analysis.hpp"
#include "symstream/json_io.hpp"
#include "symstream/keystream.hpp"
#include "symstream/sampler.hpp"
#include "symstream/sha512.hpp"

namespace symstream {

void validate(const ExperimentConfig &c) {
  if (c.trials == 0)
    throw std::invalid_argument("experiment: trials must be at least 1");
  if (c.degree < 2 || c.degree > kMaxDegree)
    throw std::invalid_argument("experiment: degree must be in [2, 65536]");
  if (c.stream_bytes < 16 * c.degree)
    throw std::invalid_argument("experiment: stream_bytes must be >= 16 * degree");
}

int resolve_threads(int requested) {
  if (requested > 0)
    return requested;
  if (const char *env = std::getenv("SYMSTREAM_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0)
      return static_cast<int>(v);
  }
  return omp_get_num_procs();
}

std::string permutation_digest(const Permutation &p) {
  std::vector<std::uint8_t> buf;
  buf.reserve(2 * p.degree());
  for (auto v : p.map()) {
    buf.push_back(static_cast<std::uint8_t>(v & 0xFF));
    buf.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  const auto d = sha512(buf);
  return to_hex(std::span(d).first(8));
}

namespace {

Permutation draw(std::size_t n, bool derangements_only, SampleSource &src) {
  return derangements_only ? derangement(n, src) : uniform_permutation(n, src);
}

TrialRecord run_trial(const ExperimentConfig &c, std::size_t index,
                      const Permutation *shared_x, std::span<const std::uint8_t> a) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = c.master_seed + index;
  SampleSource src(rec.seed);
  Permutation x = draw(c.degree, c.derangements_only, src);
  Permutation y = draw(c.degree, c.derangements_only, src);
  if (shared_x)
    x = *shared_x;
  if (c.force_identity_y)
    y = Permutation::identity(c.degree);

  rec.x_digest = permutation_digest(x);
  rec.y_digest = permutation_digest(y);
  rec.y_fixed_points = fixed_point_count(y);
  rec.y_is_derangement = rec.y_fixed_points == 0;

  KeystreamState state(std::move(x), y, a);
  const auto stream = state.generate(c.stream_bytes);
  rec.report = stats::battery(BitStream::from_bytes(stream), c.battery);
  return rec;
}

} // namespace

ExperimentSummary run_experiment(const ExperimentConfig &config) {
  validate(config);
  ExperimentSummary s;
  s.config = config;
  s.trials.resize(config.trials);

  const auto a = derive_state_bytes({config.passphrase, config.degree});
  std::optional<Permutation> shared_x;
  if (config.randomize == Randomize::y) {
    SampleSource src(config.master_seed);
    shared_x = draw(config.degree, config.derangements_only, src);
  }

  const auto count = static_cast<std::int64_t>(config.trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(config.threads))
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      s.trials[i] = run_trial(config, static_cast<std::size_t>(i),
                              shared_x ? &*shared_x : nullptr, a);
    } catch (...) {
#pragma omp critical
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);

  std::size_t passed = 0, deranged = 0, fp_failed = 0;
  for (const auto &t : s.trials) {
    passed += t.report.overall_pass;
    deranged += t.y_is_derangement;
    if (!t.y_is_derangement) {
      ++s.fixed_point_trials;
      fp_failed += !t.report.overall_pass;
    }
  }
  const double total = static_cast<double>(config.trials);
  s.pass_fraction = passed / total;
  s.derangement_fraction = deranged / total;
  s.fixed_point_fail_fraction =
      s.fixed_point_trials ? static_cast<double>(fp_failed) / s.fixed_point_trials
                           : 0.0;
  s.predicted_exact = analysis::derangement_fraction(config.degree);
  s.predicted_independent = analysis::independent_positions_fraction(config.degree);
  return s;
}

nlohmann::json to_json(const ExperimentSummary &s) {
  using nlohmann::json;
  const auto &c = s.config;
  json battery = {{"tests", c.battery.tests},
                  {"alpha", c.battery.alpha},
                  {"block_frequency_m", c.battery.block_frequency_m},
                  {"serial_m", c.battery.serial_m},
                  {"approximate_entropy_m", c.battery.approximate_entropy_m}};
  json config = {{"trials", c.trials},
                 {"degree", c.degree},
                 {"stream_bytes", c.stream_bytes},
                 {"derangements_only", c.derangements_only},
                 {"randomize", c.randomize == Randomize::both ? "both" : "y"},
                 {"master_seed", c.master_seed},
                 {"passphrase", c.passphrase},
                 {"force_identity_y", c.force_identity_y},
                 {"battery", std::move(battery)}};
  json trials = json::array();
  for (const auto &t : s.trials)
    trials.push_back({{"index", t.index},
                      {"seed", t.seed},
                      {"x_digest", t.x_digest},
                      {"y_digest", t.y_digest},
                      {"y_is_derangement", t.y_is_derangement},
                      {"y_fixed_points", t.y_fixed_points},
                      {"report", to_json(t.report)}});
  return {{"config", std::move(config)},
          {"trials", std::move(trials)},
          {"aggregate",
           {{"pass_fraction", s.pass_fraction},
            {"derangement_fraction", s.derangement_fraction},
            {"fixed_point_trials", s.fixed_point_trials},
            {"fixed_point_fail_fraction", s.fixed_point_fail_fraction},
            {"predicted_derangement_fraction_exact", s.predicted_exact},
            {"predicted_derangement_fraction_independent",
             s.predicted_independent}}}};
}

} // namespace symstream
