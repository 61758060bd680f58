#pragma once

// The conjugation keystream generator.
//
// State is (x, y, a): a fixed conjugator x, an evolving permutation y and an
// n-byte array a. One step
//   1. sweeps i = 0..n-1 in order, a[i] ^= a[y[i]], reading the array as it
//      is being updated,
//   2. emits a copy of a,
//   3. replaces y with x ∘ y ∘ x⁻¹.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "symstream/permutation.hpp"

namespace symstream {

using Bytes = std::vector<std::uint8_t>;

/// The 64-byte state literal shipped with the original C reference program.
inline constexpr std::array<std::uint8_t, 64> kReferenceSeedBytes = {
    148, 246, 52,  251, 16,  194, 72,  150, 249, 23,  90,  107, 151,
    42,  154, 124, 48,  58,  30,  24,  42,  33,  38,  10,  115, 41,
    164, 16,  33,  32,  252, 143, 86,  175, 8,   132, 103, 231, 95,
    190, 61,  29,  215, 75,  251, 248, 72,  48,  224, 200, 147, 93,
    112, 25,  227, 223, 206, 137, 51,  88,  109, 214, 17,  172};

struct SeedSpec {
  std::string_view passphrase;
  std::size_t degree = 64;
};

/// First `degree` bytes of h1 || h2 || ... where h1 = SHA-512(passphrase)
/// and h(k+1) = SHA-512(h(k)).
Bytes derive_state_bytes(const SeedSpec &spec);

class KeystreamState {
public:
  /// Throws std::invalid_argument unless x, y and a share one degree.
  KeystreamState(Permutation x, const Permutation &y,
                 std::span<const std::uint8_t> a);

  std::size_t degree() const noexcept { return a_.size(); }
  const Permutation &x() const noexcept { return x_; }
  Permutation y() const;
  std::span<const std::uint8_t> bytes() const noexcept { return a_; }
  std::uint64_t step_count() const noexcept { return steps_; }

  /// Diagnostic only: fixed points of y zero their byte on every step.
  bool y_is_derangement() const noexcept;

  /// Advances one step and writes the block into `out` (size == degree()).
  void step_into(std::span<std::uint8_t> out);
  Bytes step();

  /// Next `nbytes` of the stream. Bytes of a block not consumed by one call
  /// are returned first by the next, so successive calls split one stream.
  Bytes generate(std::size_t nbytes);
  void generate_into(std::span<std::uint8_t> out);

  /// Same (y, a); step count and buffered output are ignored.
  bool same_state(const KeystreamState &other) const noexcept;

private:
  Permutation x_;
  std::vector<Permutation::point_type> x_inv_;
  std::vector<Permutation::point_type> y_;
  std::vector<Permutation::point_type> scratch_;
  Bytes a_;
  std::uint64_t steps_ = 0;
  Bytes pending_;
  std::size_t pending_pos_ = 0;
};

/// Least k >= 1 with x^k ∘ y ∘ x^-k == y, or nullopt when that k exceeds
/// max_k. The period always divides order(x). Throws if max_k == 0.
std::optional<std::uint64_t> orbit_period(const Permutation &x,
                                          const Permutation &y,
                                          std::uint64_t max_k);

struct StateCycle {
  /// Steps before the first state that recurs.
  std::uint64_t tail;
  std::uint64_t cycle;

  friend bool operator==(const StateCycle &, const StateCycle &) = default;
};

/// Brent cycle detection on the full (y, a) state. Returns nullopt when the
/// cycle is not closed within max_steps state transitions. Throws if
/// max_steps == 0.
std::optional<StateCycle> state_cycle(const Permutation &x,
                                      const Permutation &y,
                                      std::span<const std::uint8_t> a,
                                      std::uint64_t max_steps);

} // namespace symstream
