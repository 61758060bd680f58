#include <doctest.h>

#include <fstream>
#include <stdexcept>
#include <map>
#include <random>
#include <string>

#include "symstream/json_io.hpp"
#include "symstream/keystream.hpp"
#include "symstream/sha512.hpp"
#include "test_util.hpp"

using namespace symstream;
using test_util::perm;
using test_util::random_perm;

namespace {

// Line-for-line transcription of the original C main loop on plain arrays:
//   for(i) a[i]^=a[x1[i]]; fwrite(a); for(i) w[i]=x0[x1[z[i]]]; x1=w;
Bytes transcribed_loop(std::vector<int> x0, std::vector<int> x1, Bytes a,
                       std::size_t nbytes) {
  const std::size_t n = a.size();
  std::vector<int> z(n), w(n);
  for (std::size_t i = 0; i < n; i++)
    z[x0[i]] = static_cast<int>(i);
  Bytes out;
  while (out.size() < nbytes) {
    for (std::size_t i = 0; i < n; i++)
      a[i] ^= a[x1[i]];
    out.insert(out.end(), a.begin(), a.end());
    for (std::size_t i = 0; i < n; i++)
      w[i] = x0[x1[z[i]]];
    for (std::size_t i = 0; i < n; i++)
      x1[i] = w[i];
  }
  out.resize(nbytes);
  return out;
}

std::vector<int> as_ints(const Permutation &p) { return {p.map().begin(), p.map().end()}; }

Bytes random_bytes(std::size_t n, std::mt19937_64 &rng) {
  Bytes b(n);
  for (auto &v : b)
    v = static_cast<std::uint8_t>(rng());
  return b;
}

Bytes from_hex(const std::string &hex) {
  Bytes out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  return out;
}

std::string read_line(const std::string &path) {
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  return s;
}

} // namespace

TEST_CASE("sha512 known answer") {
  const std::string abc = "abc";
  const auto d = sha512(std::span(reinterpret_cast<const std::uint8_t *>(abc.data()), 3));
  CHECK(to_hex(d) ==
        "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
        "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f");
}

TEST_CASE("derive_state_bytes chains SHA-512") {
  const std::string pass = "passphrase";
  const auto h1 = sha512(std::span(reinterpret_cast<const std::uint8_t *>(pass.data()),
                                   pass.size()));
  const auto s64 = derive_state_bytes({pass, 64});
  CHECK(Bytes(h1.begin(), h1.end()) == s64);

  const auto s65 = derive_state_bytes({pass, 65});
  REQUIRE(s65.size() == 65);
  CHECK(std::equal(h1.begin(), h1.end(), s65.begin()));
  CHECK(s65[64] == sha512(h1)[0]);

  CHECK(derive_state_bytes({pass, 200}) == derive_state_bytes({pass, 200}));
  CHECK(derive_state_bytes({pass, 3}) == Bytes(h1.begin(), h1.begin() + 3));
  CHECK_THROWS_AS(derive_state_bytes({pass, 0}), std::invalid_argument);
}

TEST_CASE("init") {
  auto id = Permutation::identity(64);
  KeystreamState s(id, id, kReferenceSeedBytes);
  const Bytes head(s.bytes().begin(), s.bytes().begin() + 7);
  CHECK(head == Bytes{148, 246, 52, 251, 16, 194, 72});
  CHECK(s.step_count() == 0);
  CHECK_FALSE(s.y_is_derangement());

  CHECK_NOTHROW(KeystreamState(Permutation::identity(5), Permutation::identity(5),
                               Bytes(5, 0)));
  CHECK_THROWS_AS(KeystreamState(Permutation::identity(58), Permutation::identity(58),
                                 kReferenceSeedBytes),
                  std::invalid_argument);
  CHECK_THROWS_AS(KeystreamState(Permutation::identity(4), Permutation::identity(5),
                                 Bytes(4, 0)),
                  std::invalid_argument);

  Bytes a = {1, 2, 3};
  KeystreamState copy(perm({1, 2, 0}), perm({1, 2, 0}), a);
  a[0] = 99;
  CHECK(copy.bytes()[0] == 1);
}

TEST_CASE("step sweeps in place and in ascending order") {
  KeystreamState s(Permutation::identity(3), perm({1, 2, 0}), Bytes{1, 2, 3});
  CHECK(s.step() == Bytes{3, 1, 0});
  CHECK(s.step_count() == 1);
  // a double-buffered sweep would give {3, 1, 2}
}

TEST_CASE("identity y collapses the state to zero") {
  std::mt19937_64 rng(3);
  KeystreamState s(random_perm(16, rng), Permutation::identity(16), random_bytes(16, rng));
  for (int i = 0; i < 5; ++i)
    CHECK(s.step() == Bytes(16, 0));
}

TEST_CASE("conjugation by the identity keeps y") {
  std::mt19937_64 rng(4);
  const auto y = random_perm(10, rng);
  KeystreamState s(Permutation::identity(10), y, random_bytes(10, rng));
  for (int i = 0; i < 5; ++i) {
    s.step();
    CHECK(s.y() == y);
  }
}

TEST_CASE("generate") {
  std::mt19937_64 rng(5);
  const auto x = random_perm(12, rng), y = random_perm(12, rng);
  const auto a = random_bytes(12, rng);

  KeystreamState s(x, y, a);
  CHECK(s.generate(0).empty());
  CHECK(s.step_count() == 0);

  KeystreamState blocks(x, y, a);
  Bytes expect = blocks.step();
  const auto second = blocks.step();
  expect.insert(expect.end(), second.begin(), second.end());
  CHECK(s.generate(24) == expect);
  CHECK(s.step_count() == 2);

  KeystreamState partial(x, y, a);
  CHECK(partial.generate(13).size() == 13);
  CHECK(partial.step_count() == 2);
}

TEST_CASE("successive generate calls split one stream") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 20;
    const auto x = random_perm(n, rng), y = random_perm(n, rng);
    const auto a = random_bytes(n, rng);
    const std::size_t k1 = rng() % 100, k2 = rng() % 100, k3 = rng() % 100;
    KeystreamState whole(x, y, a), parts(x, y, a);
    const auto all = whole.generate(k1 + k2 + k3);
    auto joined = parts.generate(k1);
    for (auto k : {k2, k3}) {
      const auto more = parts.generate(k);
      joined.insert(joined.end(), more.begin(), more.end());
    }
    REQUIRE(joined == all);
  }
}

TEST_CASE("matches a straight transcription of the reference loop") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 70;
    const auto x = random_perm(n, rng), y = random_perm(n, rng);
    const auto a = random_bytes(n, rng);
    const std::size_t len = rng() % 500;
    KeystreamState s(x, y, a);
    REQUIRE(s.generate(len) == transcribed_loop(as_ints(x), as_ints(y), a, len));
  }
}

TEST_CASE("golden vector from the committed key and the seed literal") {
  const auto key = key_from_json(read_json_file(SYMSTREAM_TEST_DATA "/golden_key.json"));
  const auto golden = from_hex(read_line(SYMSTREAM_TEST_DATA "/golden_stream.hex"));
  REQUIRE(golden.size() == 192);
  KeystreamState s(key.x, key.y, kReferenceSeedBytes);
  CHECK(s.generate(192) == golden);
  CHECK(transcribed_loop(as_ints(key.x), as_ints(key.y),
                         Bytes(kReferenceSeedBytes.begin(), kReferenceSeedBytes.end()),
                         192) == golden);
}

TEST_CASE("orbit invariants hold per step") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 40;
    auto y = random_perm(n, rng);
    KeystreamState s(random_perm(n, rng), y, random_bytes(n, rng));
    const auto type = cycle_structure(y).cycle_type;
    for (int step = 0; step < 30; ++step) {
      const auto fixed = fixed_points(s.y());
      const auto block = s.step();
      for (auto f : fixed)
        REQUIRE(block[f] == 0);
      REQUIRE(cycle_structure(s.y()).cycle_type == type);
    }
  }
}

TEST_CASE("orbit_period") {
  CHECK(*orbit_period(perm({1, 2, 0}), Permutation::identity(3), 100) == 1);
  CHECK(*orbit_period(perm({1, 2, 0}), perm({1, 0, 2}), 100) == 3);
  CHECK_FALSE(orbit_period(perm({1, 2, 0}), perm({1, 0, 2}), 2).has_value());
  CHECK_THROWS_AS(orbit_period(perm({1, 2, 0}), perm({1, 0, 2}), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(orbit_period(perm({1, 0}), perm({1, 2, 0}), 5), std::invalid_argument);

  std::mt19937_64 rng(9);
  const std::vector<std::size_t> lengths = {2, 3, 5, 7, 11, 13, 17};
  const auto x = with_cycle_type(lengths);
  for (int t = 0; t < 20; ++t) {
    const auto p = orbit_period(x, random_perm(58, rng), 1'000'000);
    REQUIRE(p.has_value());
    REQUIRE(510510 % *p == 0);
  }
}

TEST_CASE("orbit_period agrees with sequential conjugation") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const auto x = random_perm(n, rng), y = random_perm(n, rng);
    std::uint64_t k = 1;
    for (auto c = conjugate(x, y); c != y; c = conjugate(x, c))
      ++k;
    const auto p = orbit_period(x, y, 1'000'000);
    REQUIRE(p.has_value());
    REQUIRE(*p == k);
    REQUIRE(order(x) % k == 0);
  }
}

namespace {

// Oracle for state_cycle: record every (y, a) state until one repeats.
StateCycle enumerate_cycle(const Permutation &x, const Permutation &y, const Bytes &a) {
  std::map<std::pair<std::vector<std::uint16_t>, Bytes>, std::uint64_t> seen;
  KeystreamState s(x, y, a);
  for (std::uint64_t t = 0;; ++t) {
    const auto yy = s.y();
    auto key = std::make_pair(std::vector<std::uint16_t>(yy.map().begin(), yy.map().end()),
                              Bytes(s.bytes().begin(), s.bytes().end()));
    if (auto it = seen.find(key); it != seen.end())
      return {it->second, t - it->second};
    seen.emplace(std::move(key), t);
    s.step();
  }
}

} // namespace

TEST_CASE("state_cycle") {
  auto id = Permutation::identity(4);
  CHECK(*state_cycle(id, id, Bytes{1, 2, 3, 4}, 100) == StateCycle{1, 1});
  CHECK(*state_cycle(id, id, Bytes{0, 0, 0, 0}, 100) == StateCycle{0, 1});

  const auto swap = perm({1, 0});
  const auto small = state_cycle(swap, swap, Bytes{1, 2}, 100);
  CHECK(*small == enumerate_cycle(swap, swap, Bytes{1, 2}));
  CHECK(*small == StateCycle{0, 3}); // [1,2] -> [3,1] -> [2,3] -> [1,2]

  CHECK_THROWS_AS(state_cycle(swap, swap, Bytes{1, 2}, 0), std::invalid_argument);
  CHECK_FALSE(state_cycle(swap, swap, Bytes{1, 2}, 2).has_value());

  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto x = random_perm(n, rng), y = random_perm(n, rng);
    const auto a = random_bytes(n, rng);
    const auto got = state_cycle(x, y, a, 1u << 26);
    REQUIRE(got.has_value());
    REQUIRE(*got == enumerate_cycle(x, y, a));
    REQUIRE(got->cycle % *orbit_period(x, y, 1000) == 0);
  }
}
