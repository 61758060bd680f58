#pragma once

// Closed-form sizing and counting for the permutation generator: key space,
// array and state memory, derangement counts, and the largest element order.

#include <cstddef>
#include <vector>

#include "symstream/permutation.hpp"

namespace symstream::analysis {

/// log2(n!), computed as sum_{k=2..n} log2 k.
double keyspace_bits(std::size_t n);

/// Least n with keyspace_bits(n) >= bits.
std::size_t min_degree_for_bits(double bits);

/// ceil(log2 n); 0 for n == 1.
std::size_t bits_per_point(std::size_t n);

struct KeySizing {
  std::size_t degree = 0;
  /// Information content of a uniformly chosen permutation.
  double keyspace_bits = 0;
  /// One permutation in array form, ceil(log2 n) bits per entry.
  std::size_t array_bits = 0;
  /// Both permutations of the generator.
  std::size_t state_bits = 0;
  /// The byte sequence a, at block_bits per point.
  std::size_t block_bits = 8;
  std::size_t sequence_bits = 0;
};

KeySizing sizing(std::size_t n, std::size_t block_bits = 8);

/// D_0 = 1, D_1 = 0, D_n = (n-1)(D_{n-1} + D_{n-2}).
BigInt derangement_count(std::size_t n);

/// D_n / n!.
double derangement_fraction(std::size_t n);

/// (1 - 1/n)^n: the chance that n independent positions each avoid one value.
double independent_positions_fraction(std::size_t n);

struct LandauResult {
  BigInt value;
  /// Prime powers whose lcm is `value`, padded with 1s so they sum to n.
  std::vector<std::size_t> parts;
};

inline constexpr std::size_t kLandauMaxDegree = 100;

/// Landau's g(n): the largest order of an element of S_n, by a knapsack over
/// prime powers. 1 <= n <= kLandauMaxDegree, else std::out_of_range.
LandauResult landau(std::size_t n);
BigInt landau_max_order(std::size_t n);

} // namespace symstream::analysis
