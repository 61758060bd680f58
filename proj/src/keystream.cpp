#include "symstream/keystream.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>

#include "symstream/sha512.hpp"

namespace symstream {

Bytes derive_state_bytes(const SeedSpec &spec) {
  if (spec.degree == 0)
    throw std::invalid_argument("seed degree must be at least 1");
  Bytes out;
  out.reserve(spec.degree);
  auto h = sha512(std::span(
      reinterpret_cast<const std::uint8_t *>(spec.passphrase.data()),
      spec.passphrase.size()));
  for (;;) {
    const std::size_t take = std::min(h.size(), spec.degree - out.size());
    out.insert(out.end(), h.begin(), h.begin() + take);
    if (out.size() == spec.degree)
      return out;
    h = sha512(h);
  }
}

KeystreamState::KeystreamState(Permutation x, const Permutation &y,
                               std::span<const std::uint8_t> a)
    : x_(std::move(x)) {
  if (x_.degree() != y.degree() || y.degree() != a.size())
    throw std::invalid_argument(
        "keystream state: x, y and a must share one degree (got " +
        std::to_string(x_.degree()) + ", " + std::to_string(y.degree()) +
        ", " + std::to_string(a.size()) + ")");
  const auto xi = inverse(x_);
  x_inv_.assign(xi.map().begin(), xi.map().end());
  y_.assign(y.map().begin(), y.map().end());
  scratch_.resize(y_.size());
  a_.assign(a.begin(), a.end());
}

Permutation KeystreamState::y() const { return Permutation(y_); }

bool KeystreamState::y_is_derangement() const noexcept {
  for (std::size_t i = 0; i < y_.size(); ++i)
    if (y_[i] == i)
      return false;
  return true;
}

void KeystreamState::step_into(std::span<std::uint8_t> out) {
  const std::size_t n = a_.size();
  if (out.size() != n)
    throw std::invalid_argument("step_into: output block must have degree size");
  std::uint8_t *a = a_.data();
  const auto *y = y_.data();
  // In place and ascending: a[y[i]] may already hold this sweep's value.
  for (std::size_t i = 0; i < n; ++i)
    a[i] ^= a[y[i]];
  std::memcpy(out.data(), a, n);

  const auto *x = x_.map().data();
  const auto *xi = x_inv_.data();
  auto *w = scratch_.data();
  for (std::size_t i = 0; i < n; ++i)
    w[i] = x[y[xi[i]]];
  y_.swap(scratch_);
  ++steps_;
}

Bytes KeystreamState::step() {
  Bytes block(a_.size());
  step_into(block);
  return block;
}

void KeystreamState::generate_into(std::span<std::uint8_t> out) {
  const std::size_t n = a_.size();
  std::size_t pos = 0;
  if (pending_pos_ < pending_.size()) {
    const std::size_t take = std::min(out.size(), pending_.size() - pending_pos_);
    std::memcpy(out.data(), pending_.data() + pending_pos_, take);
    pending_pos_ += take;
    pos = take;
  }
  while (out.size() - pos >= n) {
    step_into(out.subspan(pos, n));
    pos += n;
  }
  if (pos < out.size()) {
    pending_.resize(n);
    step_into(pending_);
    pending_pos_ = out.size() - pos;
    std::memcpy(out.data() + pos, pending_.data(), pending_pos_);
  }
}

Bytes KeystreamState::generate(std::size_t nbytes) {
  Bytes out(nbytes);
  generate_into(out);
  return out;
}

bool KeystreamState::same_state(const KeystreamState &other) const noexcept {
  return y_ == other.y_ && a_ == other.a_;
}

namespace {

std::set<std::uint64_t> primes_dividing_cycle_lengths(const Permutation &p) {
  std::set<std::uint64_t> primes;
  for (auto len : cycle_structure(p).cycle_type) {
    for (std::uint64_t d = 2; d * d <= len; ++d) {
      if (len % d == 0) {
        primes.insert(d);
        while (len % d == 0)
          len /= d;
      }
    }
    if (len > 1)
      primes.insert(len);
  }
  return primes;
}

bool fixes_under_conjugation(const Permutation &x, const BigInt &k,
                             const Permutation &y) {
  return conjugate(power(x, k), y) == y;
}

} // namespace

std::optional<std::uint64_t> orbit_period(const Permutation &x,
                                          const Permutation &y,
                                          std::uint64_t max_k) {
  if (max_k == 0)
    throw std::invalid_argument("orbit_period: max_k must be positive");
  if (x.degree() != y.degree())
    throw std::invalid_argument("orbit_period: degree mismatch");
  // The k with x^k y x^-k == y form a subgroup of Z containing order(x);
  // strip prime factors from order(x) while the quotient still stabilises y.
  BigInt period = order(x);
  for (auto p : primes_dividing_cycle_lengths(x)) {
    while (period % p == 0 && fixes_under_conjugation(x, period / p, y))
      period /= p;
  }
  if (period > max_k)
    return std::nullopt;
  return static_cast<std::uint64_t>(period);
}

std::optional<StateCycle> state_cycle(const Permutation &x,
                                      const Permutation &y,
                                      std::span<const std::uint8_t> a,
                                      std::uint64_t max_steps) {
  if (max_steps == 0)
    throw std::invalid_argument("state_cycle: max_steps must be positive");
  const KeystreamState start(x, y, a);
  Bytes block(start.degree());

  // Brent: find the cycle length with a power-of-two-spaced checkpoint.
  KeystreamState tortoise = start;
  KeystreamState hare = start;
  hare.step_into(block);
  std::uint64_t power = 1, cycle = 1, evaluations = 1;
  while (!tortoise.same_state(hare)) {
    if (evaluations >= max_steps)
      return std::nullopt;
    if (power == cycle) {
      tortoise = hare;
      power *= 2;
      cycle = 0;
    }
    hare.step_into(block);
    ++cycle;
    ++evaluations;
  }

  // Tail: run two copies `cycle` steps apart until they meet.
  tortoise = start;
  hare = start;
  for (std::uint64_t i = 0; i < cycle; ++i)
    hare.step_into(block);
  std::uint64_t tail = 0;
  while (!tortoise.same_state(hare)) {
    tortoise.step_into(block);
    hare.step_into(block);
    ++tail;
  }
  return StateCycle{tail, cycle};
}

} // namespace symstream
