#pragma once

// Reproducible sampling of permutations and derangements.

#include <cstddef>
#include <cstdint>

#include "symstream/permutation.hpp"

namespace symstream {

/// Counter-based 64-bit source: word k is splitmix64's finalizer applied to
/// seed + (k+1)·0x9E3779B97F4A7C15. Same seed, same words, on every platform.
class SampleSource {
public:
  explicit SampleSource(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound). Rejects the top partial range, so there is
  /// no modulo bias. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Fisher-Yates shuffle of the identity.
Permutation uniform_permutation(std::size_t n, SampleSource &src);

struct DerangementDraw {
  Permutation perm;
  /// Number of uniform permutations drawn, including the accepted one.
  std::size_t attempts;
};

/// Rejection from uniform_permutation until no point is fixed. n >= 2.
DerangementDraw derangement_with_attempts(std::size_t n, SampleSource &src);
Permutation derangement(std::size_t n, SampleSource &src);

} // namespace symstream
