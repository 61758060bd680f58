#include "symstream/cli.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "symstream/analysis.hpp"
#include "symstream/experiment.hpp"
#include "symstream/json_io.hpp"
#include "symstream/keystream.hpp"
#include "symstream/sampler.hpp"

namespace symstream::cli {

using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::uint64_t parse_seed(const std::string &text) {
  try {
    std::size_t used = 0;
    std::uint64_t v;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
      v = std::stoull(text.substr(2), &used, 16), used += 2;
    else
      v = std::stoull(text, &used, 10);
    if (used != text.size() || text.front() == '-')
      throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error &) {
    throw UsageError("invalid seed '" + text + "': expected decimal or 0x-hex");
  }
}

json big_to_json(const BigInt &v) {
  if (v <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(v);
  return v.str();
}

json describe(const Permutation &p) {
  const auto cs = cycle_structure(p);
  return {{"degree", p.degree()},
          {"cycles", cs.cycles},
          {"cycle_type", cs.cycle_type},
          {"order", big_to_json(order(p))},
          {"fixed_points", fixed_points(p)},
          {"is_derangement", is_derangement(p)}};
}

struct Globals {
  std::string seed = "0";
  std::string out;
  std::string format;
};

void emit(const Globals &g, const std::string &text, std::ostream &out) {
  if (g.out.empty() || g.out == "-")
    out << text;
  else
    write_text_file(g.out, text);
}

void emit_json(const Globals &g, const json &j, std::ostream &out) {
  emit(g, j.dump(2) + "\n", out);
}

// sample ---------------------------------------------------------------------

struct SampleArgs {
  std::size_t degree = 64;
  std::size_t count = 1;
  bool derangement = false;
  bool key = false;
};

int cmd_sample(const Globals &g, const SampleArgs &a, std::ostream &out) {
  if (a.derangement && a.degree < 2)
    throw UsageError("no derangement exists for degree < 2");
  if (a.degree < 1 || a.degree > kMaxDegree)
    throw UsageError("degree must be in [1, 65536]");
  if (a.count < 1)
    throw UsageError("count must be at least 1");
  SampleSource src(parse_seed(g.seed));
  auto draw = [&] {
    return a.derangement ? derangement(a.degree, src)
                         : uniform_permutation(a.degree, src);
  };
  json items = json::array();
  for (std::size_t i = 0; i < a.count; ++i) {
    if (a.key) {
      auto x = draw();
      auto y = draw();
      items.push_back(to_json(Key{std::move(x), std::move(y)}));
    } else {
      items.push_back(to_json(draw()));
    }
  }
  emit_json(g, a.count == 1 ? items[0] : items, out);
  return kPass;
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  std::string key_file;
  std::string passphrase;
  bool reference_seed = false;
  std::size_t bytes = 0;
};

int cmd_gen(const Globals &g, const GenArgs &a, std::ostream &out) {
  const std::string format = g.format.empty() ? "raw" : g.format;
  if (format != "raw" && format != "ascii")
    throw UsageError("gen: --format must be raw or ascii");
  if (a.reference_seed == !a.passphrase.empty())
    throw UsageError("gen: give exactly one of --passphrase or --reference-seed");
  const Key key = key_from_json(read_json_file(a.key_file));
  const std::size_t n = key.x.degree();

  Bytes state;
  if (a.reference_seed) {
    if (n > kReferenceSeedBytes.size())
      throw UsageError("gen: the reference seed holds only 64 bytes");
    state.assign(kReferenceSeedBytes.begin(), kReferenceSeedBytes.begin() + n);
  } else {
    state = derive_state_bytes({a.passphrase, n});
  }
  KeystreamState ks(key.x, key.y, state);
  const auto stream = ks.generate(a.bytes);

  const bool to_stdout = g.out.empty() || g.out == "-";
  if (format == "ascii") {
    emit(g, to_ascii_bits(stream), out);
  } else if (to_stdout) {
    out.write(reinterpret_cast<const char *>(stream.data()),
              static_cast<std::streamsize>(stream.size()));
  } else {
    write_binary_file(g.out, stream);
  }
  return kPass;
}

// analyze --------------------------------------------------------------------

struct AnalyzeArgs {
  std::string perm_file;
  std::string partner_file;
  std::uint64_t max_period = std::uint64_t{1} << 40;
};

json period_json(const Permutation &x, const Permutation &y, std::uint64_t max_k) {
  const auto p = orbit_period(x, y, max_k);
  return {{"orbit_period", p ? json(*p) : json(nullptr)},
          {"exceeded", !p.has_value()},
          {"max_period", max_k}};
}

int cmd_analyze(const Globals &g, const AnalyzeArgs &a, std::ostream &out) {
  const auto doc = read_json_file(a.perm_file);
  json result;
  if (doc.is_object() && doc.contains("x") && doc.contains("y")) {
    const Key key = key_from_json(doc);
    result = {{"x", describe(key.x)}, {"y", describe(key.y)}};
    result["conjugation"] = period_json(key.x, key.y, a.max_period);
  } else {
    const auto p = permutation_from_json(doc);
    result = {{"permutation", describe(p)}};
    if (!a.partner_file.empty()) {
      const auto q = permutation_from_json(read_json_file(a.partner_file));
      if (q.degree() != p.degree())
        throw UsageError("analyze: partner has a different degree");
      result["partner"] = describe(q);
      result["conjugation"] = period_json(p, q, a.max_period);
    }
  }
  emit_json(g, result, out);
  return kPass;
}

// test -----------------------------------------------------------------------

struct BatteryArgs {
  double alpha = 0.01;
  std::size_t block_m = 128;
  unsigned serial_m = 2;
  unsigned apen_m = 2;
  std::vector<std::string> tests;

  stats::BatteryConfig config() const {
    stats::BatteryConfig c;
    c.alpha = alpha;
    c.block_frequency_m = block_m;
    c.serial_m = serial_m;
    c.approximate_entropy_m = apen_m;
    if (!tests.empty())
      c.tests = tests;
    return c;
  }
};

void add_battery_options(CLI::App *cmd, BatteryArgs &b) {
  cmd->add_option("--alpha", b.alpha, "significance level")->capture_default_str();
  cmd->add_option("--block-m", b.block_m, "block frequency block length")
      ->capture_default_str();
  cmd->add_option("--serial-m", b.serial_m, "serial pattern length")
      ->capture_default_str();
  cmd->add_option("--apen-m", b.apen_m, "approximate entropy pattern length")
      ->capture_default_str();
  cmd->add_option("--tests", b.tests, "subset of tests to run")->delimiter(',');
}

struct TestArgs {
  std::string in;
  std::string report;
  BatteryArgs battery;
};

int cmd_test(const Globals &g, const TestArgs &a, std::ostream &out) {
  const std::string format = g.format.empty() ? "raw" : g.format;
  if (format != "raw" && format != "ascii")
    throw UsageError("test: --format must be raw or ascii");
  const auto data = read_binary_file(a.in);
  BitStream bits;
  if (format == "raw") {
    bits = BitStream::from_bytes(data);
  } else {
    std::string text(data.begin(), data.end());
    std::erase_if(text, [](char c) { return c != '0' && c != '1'; });
    bits = BitStream::from_string(text);
  }
  const auto report = stats::battery(bits, a.battery.config());
  Globals dest = g;
  if (!a.report.empty())
    dest.out = a.report;
  emit_json(dest, to_json(report), out);
  return report.overall_pass ? kPass : kFail;
}

// experiment -----------------------------------------------------------------

struct ExperimentArgs {
  ExperimentConfig config;
  std::string randomize = "both";
  BatteryArgs battery;
};

int cmd_experiment(const Globals &g, ExperimentArgs a, std::ostream &out) {
  if (a.randomize == "both")
    a.config.randomize = Randomize::both;
  else if (a.randomize == "y")
    a.config.randomize = Randomize::y;
  else
    throw UsageError("experiment: --randomize must be both or y");
  a.config.master_seed = parse_seed(g.seed);
  a.config.battery = a.battery.config();
  emit_json(g, to_json(run_experiment(a.config)), out);
  return kPass;
}

// keyspace -------------------------------------------------------------------

struct KeyspaceArgs {
  std::size_t degree = 58;
  double bits = 256;
  std::size_t block_bits = 8;
};

int cmd_keyspace(const Globals &g, const KeyspaceArgs &a, std::ostream &out) {
  if (a.degree < 1 || a.degree > kMaxDegree)
    throw UsageError("keyspace: degree must be in [1, 65536]");
  if (!(a.bits > 0))
    throw UsageError("keyspace: --bits must be positive");
  const auto s = analysis::sizing(a.degree, a.block_bits);
  json result = {
      {"degree", a.degree},
      {"keyspace_bits", s.keyspace_bits},
      {"array_bits", s.array_bits},
      {"bits_per_point", analysis::bits_per_point(a.degree)},
      {"state_bits", s.state_bits},
      {"block_bits", s.block_bits},
      {"sequence_bits", s.sequence_bits},
      {"target_bits", a.bits},
      {"min_degree_for_target_bits", analysis::min_degree_for_bits(a.bits)},
      {"derangement_count", analysis::derangement_count(a.degree).str()},
      {"derangement_fraction", analysis::derangement_fraction(a.degree)},
      {"independent_positions_fraction",
       analysis::independent_positions_fraction(a.degree)}};

  if (a.degree <= analysis::kLandauMaxDegree) {
    const auto l = analysis::landau(a.degree);
    // Distinct primes 2, 3, 5, ... while their sum fits in the degree.
    std::vector<std::size_t> primes;
    BigInt product = 1;
    std::size_t used = 0;
    for (std::size_t p = 2; used + p <= a.degree; ++p) {
      bool prime = true;
      for (std::size_t d = 2; d * d <= p; ++d)
        prime = prime && p % d != 0;
      if (!prime)
        continue;
      primes.push_back(p);
      product *= p;
      used += p;
    }
    result["landau"] = {
        {"max_order", big_to_json(l.value)},
        {"witness_parts", l.parts},
        {"consecutive_primes", primes},
        {"consecutive_primes_order", big_to_json(product)},
        {"verdict", l.value == product ? "equal" : "landau_exceeds"}};
  } else {
    result["landau"] = {{"skipped", "degree above 100"}};
  }
  emit_json(g, result, out);
  return kPass;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Conjugation keystream generator: sampling, generation, "
               "analysis and randomness testing"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed, decimal or 0x-hex")->capture_default_str();
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "stream format: raw or ascii");

  SampleArgs sample;
  auto *c_sample = app.add_subcommand("sample", "sample permutations or keys");
  c_sample->add_option("--degree", sample.degree)->required();
  c_sample->add_option("--count", sample.count)->capture_default_str();
  c_sample->add_flag("--derangement", sample.derangement, "fixed-point-free only");
  c_sample->add_flag("--key", sample.key, "emit {x, y} key objects");

  GenArgs gen;
  auto *c_gen = app.add_subcommand("gen", "generate a keystream");
  c_gen->add_option("--key", gen.key_file, "key JSON file")->required();
  c_gen->add_option("--passphrase", gen.passphrase, "derive state by SHA-512 chain");
  c_gen->add_flag("--reference-seed", gen.reference_seed,
                  "use the built-in 64-byte state literal");
  c_gen->add_option("--bytes", gen.bytes)->required();

  AnalyzeArgs analyze;
  auto *c_analyze = app.add_subcommand("analyze", "cycle structure and periods");
  c_analyze->add_option("--perm", analyze.perm_file, "permutation or key JSON")
      ->required();
  c_analyze->add_option("--partner", analyze.partner_file,
                        "permutation y conjugated by --perm");
  c_analyze->add_option("--max-period", analyze.max_period)->capture_default_str();

  TestArgs test;
  auto *c_test = app.add_subcommand("test", "run the randomness battery");
  c_test->add_option("--in", test.in, "input stream")->required();
  c_test->add_option("--report", test.report, "report path (default --out)");
  add_battery_options(c_test, test.battery);

  ExperimentArgs exp;
  auto *c_exp = app.add_subcommand("experiment", "repeated key/stream/battery trials");
  c_exp->add_option("--trials", exp.config.trials)->capture_default_str();
  c_exp->add_option("--degree", exp.config.degree)->capture_default_str();
  c_exp->add_option("--stream-bytes", exp.config.stream_bytes)->capture_default_str();
  c_exp->add_flag("--derangements-only", exp.config.derangements_only);
  c_exp->add_option("--randomize", exp.randomize, "both or y")->capture_default_str();
  c_exp->add_option("--passphrase", exp.config.passphrase)->capture_default_str();
  c_exp->add_flag("--force-identity-y", exp.config.force_identity_y);
  c_exp->add_option("--threads", exp.config.threads, "0 = SYMSTREAM_THREADS or auto");
  add_battery_options(c_exp, exp.battery);

  KeyspaceArgs keyspace;
  auto *c_keyspace = app.add_subcommand("keyspace", "key and state sizing");
  c_keyspace->add_option("--degree", keyspace.degree)->capture_default_str();
  c_keyspace->add_option("--bits", keyspace.bits)->capture_default_str();
  c_keyspace->add_option("--block-bits", keyspace.block_bits)->capture_default_str();

  std::vector<const char *> argv;
  for (const auto &s : args)
    argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*c_sample)
      return cmd_sample(g, sample, out);
    if (*c_gen)
      return cmd_gen(g, gen, out);
    if (*c_analyze)
      return cmd_analyze(g, analyze, out);
    if (*c_test)
      return cmd_test(g, test, out);
    if (*c_exp)
      return cmd_experiment(g, exp, out);
    if (*c_keyspace)
      return cmd_keyspace(g, keyspace, out);
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

} // namespace symstream::cli
