#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "symstream/cli.hpp"
#include "symstream/json_io.hpp"
#include "symstream/permutation.hpp"
#include "symstream/sha512.hpp"

using namespace symstream;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "symstream");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("symstream_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string &name) { return (temp_dir() / name).string(); }

std::string slurp(const std::string &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_line(const std::string &p) {
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  return s;
}

void write_json(const std::string &p, const json &j) { write_text_file(p, j.dump()); }

} // namespace

TEST_CASE("sample") {
  const auto a = run({"sample", "--degree", "64", "--derangement", "--count", "2",
                      "--seed", "7", "--out", path("s1.json")});
  REQUIRE(a.code == 0);
  const auto b = run({"sample", "--degree", "64", "--derangement", "--count", "2",
                      "--seed", "7", "--out", path("s2.json")});
  REQUIRE(b.code == 0);
  CHECK(slurp(path("s1.json")) == slurp(path("s2.json")));

  const auto doc = read_json_file(path("s1.json"));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  for (const auto &p : doc) {
    const auto perm = permutation_from_json(p);
    CHECK(perm.degree() == 64);
    CHECK(is_derangement(perm));
  }

  const auto bad = run({"sample", "--degree", "1", "--derangement"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("no derangement exists") != std::string::npos);

  // 0x-hex and decimal seeds agree
  CHECK(run({"sample", "--degree", "8", "--seed", "0x2A"}).out ==
        run({"sample", "--degree", "8", "--seed", "42"}).out);
  CHECK(run({"sample", "--degree", "8", "--seed", "4x2"}).code == cli::kUsage);

  const auto key = run({"sample", "--degree", "10", "--key"});
  REQUIRE(key.code == 0);
  CHECK_NOTHROW(key_from_json(json::parse(key.out)));
}

TEST_CASE("gen") {
  const std::string key = SYMSTREAM_TEST_DATA "/golden_key.json";
  REQUIRE(run({"gen", "--key", key, "--passphrase", "test", "--bytes", "1344", "--out",
               path("g.bin")})
              .code == 0);
  CHECK(fs::file_size(path("g.bin")) == 1344); // 21 blocks of 64

  REQUIRE(run({"gen", "--key", key, "--passphrase", "test", "--bytes", "1344",
               "--format", "ascii", "--out", path("g.txt")})
              .code == 0);
  const auto ascii = slurp(path("g.txt"));
  CHECK(ascii.size() == 8 * 1344);
  CHECK(ascii.find_first_not_of("01") == std::string::npos);
  CHECK(ascii == to_ascii_bits(read_binary_file(path("g.bin"))));

  const auto r192 = run({"gen", "--key", key, "--passphrase", "test", "--bytes", "192"});
  REQUIRE(r192.code == 0);
  const auto d = sha512(std::span(reinterpret_cast<const std::uint8_t *>(r192.out.data()),
                                  r192.out.size()));
  CHECK(to_hex(d) == first_line(SYMSTREAM_TEST_DATA "/golden_passphrase.txt"));

  const auto lit = run({"gen", "--key", key, "--reference-seed", "--bytes", "192"});
  REQUIRE(lit.code == 0);
  CHECK(to_hex(std::span(reinterpret_cast<const std::uint8_t *>(lit.out.data()),
                         lit.out.size())) ==
        first_line(SYMSTREAM_TEST_DATA "/golden_stream.hex"));

  write_text_file(path("bad_key.json"), "{\"x\": {\"degree\": 2, \"map\": [0, 0]}}");
  CHECK(run({"gen", "--key", path("bad_key.json"), "--passphrase", "p", "--bytes", "10"})
            .code == cli::kIo);
  CHECK(run({"gen", "--key", path("missing.json"), "--passphrase", "p", "--bytes", "10"})
            .code == cli::kIo);
  CHECK(run({"gen", "--key", key, "--bytes", "10"}).code == cli::kUsage);
  CHECK(run({"gen", "--key", key, "--passphrase", "p", "--bytes", "1", "--format", "hex"})
            .code == cli::kUsage);
}

TEST_CASE("analyze") {
  const std::vector<std::size_t> lengths = {2, 3, 5, 7, 11, 13, 17};
  write_json(path("p58.json"), to_json(with_cycle_type(lengths)));
  const auto r = run({"analyze", "--perm", path("p58.json")});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["permutation"]["order"] == 510510);
  CHECK(j["permutation"]["cycle_type"] == json(lengths));

  write_json(path("id58.json"), to_json(Permutation::identity(58)));
  const auto id = json::parse(run({"analyze", "--perm", path("id58.json")}).out);
  CHECK(id["permutation"]["order"] == 1);
  CHECK(id["permutation"]["fixed_points"].size() == 58);
  CHECK(id["permutation"]["is_derangement"] == false);

  write_json(path("x3.json"), to_json(Permutation(std::vector<std::uint16_t>{1, 2, 0})));
  write_json(path("y3.json"), to_json(Permutation(std::vector<std::uint16_t>{1, 0, 2})));
  const auto pair = json::parse(
      run({"analyze", "--perm", path("x3.json"), "--partner", path("y3.json")}).out);
  CHECK(pair["conjugation"]["orbit_period"] == 3);
  CHECK(pair["conjugation"]["exceeded"] == false);

  const auto capped = json::parse(run({"analyze", "--perm", path("x3.json"), "--partner",
                                       path("y3.json"), "--max-period", "2"})
                                      .out);
  CHECK(capped["conjugation"]["exceeded"] == true);

  const json key = {{"x", to_json(Permutation(std::vector<std::uint16_t>{1, 2, 0}))},
                    {"y", to_json(Permutation(std::vector<std::uint16_t>{1, 0, 2}))}};
  write_json(path("k3.json"), key);
  CHECK(json::parse(run({"analyze", "--perm", path("k3.json")}).out)["conjugation"]
                   ["orbit_period"] == 3);

  write_text_file(path("garbage.json"), "{not json");
  CHECK(run({"analyze", "--perm", path("garbage.json")}).code == cli::kIo);
  write_text_file(path("short.json"), "{\"degree\": 3, \"map\": [0, 1]}");
  CHECK(run({"analyze", "--perm", path("short.json")}).code == cli::kIo);
}

TEST_CASE("test command") {
  write_binary_file(path("zeros.bin"), std::vector<std::uint8_t>(1 << 20, 0));
  const auto z = run({"test", "--in", path("zeros.bin")});
  CHECK(z.code == cli::kFail);
  CHECK(json::parse(z.out)["overall_pass"] == false);

  std::random_device dev;
  int passed = 0;
  for (int i = 0; i < 5; ++i) {
    std::vector<std::uint8_t> bytes(1 << 20);
    for (auto &b : bytes)
      b = static_cast<std::uint8_t>(dev());
    write_binary_file(path("os.bin"), bytes);
    passed += run({"test", "--in", path("os.bin")}).code == cli::kPass;
  }
  CHECK(passed >= 3);

  const auto first = run({"test", "--in", path("os.bin"), "--report", path("r1.json")});
  const auto second = run({"test", "--in", path("os.bin"), "--report", path("r2.json")});
  CHECK(first.code == second.code);
  CHECK(slurp(path("r1.json")) == slurp(path("r2.json")));
  const auto report = read_json_file(path("r1.json"));
  CHECK(report["alpha"] == 0.01);
  CHECK(report["tests"].size() == 7);

  const auto subset = json::parse(
      run({"test", "--in", path("os.bin"), "--tests", "monobit,runs", "--alpha", "0.05"}).out);
  CHECK(subset["tests"].size() == 2);
  CHECK(subset["alpha"] == 0.05);

  CHECK(run({"test", "--in", path("nope.bin")}).code == cli::kIo);
  CHECK(run({"test", "--in", path("os.bin"), "--tests", "spectral"}).code == cli::kUsage);

  // ASCII input round trip
  write_text_file(path("os.txt"), to_ascii_bits(read_binary_file(path("os.bin"))));
  CHECK(json::parse(run({"test", "--in", path("os.txt"), "--format", "ascii"}).out) ==
        json::parse(run({"test", "--in", path("os.bin")}).out));
}

TEST_CASE("experiment command") {
  const auto a = run({"experiment", "--trials", "3", "--stream-bytes", "16384", "--seed", "5"});
  REQUIRE(a.code == 0);
  const auto b = run({"experiment", "--trials", "3", "--stream-bytes", "16384", "--seed", "5"});
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["trials"].size() == 3);
  CHECK(j["config"]["randomize"] == "both");

  const auto forced = json::parse(run({"experiment", "--trials", "1", "--stream-bytes",
                                       "16384", "--force-identity-y"})
                                      .out);
  const auto &rep = forced["trials"][0]["report"];
  CHECK(rep["overall_pass"] == false);
  for (const auto &t : rep["tests"])
    CHECK(t["pass"] == false);
  CHECK(forced["trials"][0]["y_fixed_points"] == 64);

  const auto yonly = json::parse(run({"experiment", "--trials", "3", "--stream-bytes",
                                      "16384", "--randomize", "y"})
                                     .out);
  CHECK(yonly["trials"][0]["x_digest"] == yonly["trials"][2]["x_digest"]);
  CHECK(yonly["trials"][0]["y_digest"] != yonly["trials"][2]["y_digest"]);

  CHECK(run({"experiment", "--trials", "0"}).code == cli::kUsage);
  CHECK(run({"experiment", "--stream-bytes", "100"}).code == cli::kUsage);
  CHECK(run({"experiment", "--randomize", "x"}).code == cli::kUsage);
}

TEST_CASE("keyspace command") {
  const auto r = run({"keyspace", "--degree", "58"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["array_bits"] == 348);
  CHECK(j["state_bits"] == 696);
  CHECK(j["min_degree_for_target_bits"] == 58);
  CHECK(j["landau"]["max_order"] == 510510);
  CHECK(j["landau"]["consecutive_primes_order"] == 510510);
  CHECK(j["landau"]["verdict"] == "equal");

  const auto big = json::parse(run({"keyspace", "--degree", "500"}).out);
  CHECK(big["landau"].contains("skipped"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"sample"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kPass);
}
