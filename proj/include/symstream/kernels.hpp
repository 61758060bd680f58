#pragma once

// Counting kernels behind the statistical tests. The functions in
// symstream::kernels are OpenMP-parallel; symstream::kernels::serial holds
// straight-line reference versions with identical results, kept for tests and
// the benchmark. All results are integers, so both paths agree exactly.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace symstream::kernels {

using Bits = std::span<const std::uint8_t>;

/// Running sum of ±1 steps over a whole stream.
struct WalkExtremes {
  std::int64_t total = 0;
  /// Max and min of S_k over k = 1..n.
  std::int64_t max_prefix = 0;
  std::int64_t min_prefix = 0;

  friend bool operator==(const WalkExtremes &, const WalkExtremes &) = default;
};

std::uint64_t count_ones(Bits bits);

/// Sum over complete blocks of (2·ones - M)^2.
std::uint64_t block_imbalance(Bits bits, std::size_t block);

/// Number of i with bits[i] != bits[i+1].
std::uint64_t transitions(Bits bits);

/// Longest run of ones per complete 8-bit block, binned {<=1, 2, 3, >=4}.
std::array<std::uint64_t, 4> longest_run_histogram(Bits bits);

WalkExtremes walk_extremes(Bits bits);

/// Overlapping m-bit pattern counts with wraparound, indexed by the pattern
/// read MSB first. m == 0 yields {}.
std::vector<std::uint64_t> pattern_counts(Bits bits, unsigned m);

namespace serial {

std::uint64_t count_ones(Bits bits);
std::uint64_t block_imbalance(Bits bits, std::size_t block);
std::uint64_t transitions(Bits bits);
std::array<std::uint64_t, 4> longest_run_histogram(Bits bits);
WalkExtremes walk_extremes(Bits bits);
std::vector<std::uint64_t> pattern_counts(Bits bits, unsigned m);

} // namespace serial

} // namespace symstream::kernels
