#pragma once

// Finite permutations in array form and the handful of group operations the
// generator and its analysis need.
//
// Convention: compose(p, q)[i] == p[q[i]], i.e. q is applied first.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace symstream {

using BigInt = boost::multiprecision::cpp_int;

/// Largest supported degree. Points are stored as 16-bit indices.
inline constexpr std::size_t kMaxDegree = std::size_t{1} << 16;

class Permutation {
public:
  using point_type = std::uint16_t;

  /// Validates that `map` is a bijection on {0..map.size()-1}.
  /// Throws std::invalid_argument otherwise.
  explicit Permutation(std::vector<point_type> map);
  explicit Permutation(std::span<const std::size_t> map);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const noexcept { return map_.size(); }
  std::span<const point_type> map() const noexcept { return map_; }
  point_type operator[](std::size_t i) const noexcept { return map_[i]; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation &, const Permutation &) = default;

private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<point_type> map) noexcept
      : map_(std::move(map)) {}

  std::vector<point_type> map_;

  friend Permutation compose(const Permutation &, const Permutation &);
  friend Permutation inverse(const Permutation &);
  friend Permutation conjugate(const Permutation &, const Permutation &);
  friend Permutation power(const Permutation &, const BigInt &);
};

/// Canonical cycle decomposition: every cycle starts at its smallest point,
/// cycles are ordered by that point, fixed points are length-1 cycles.
struct CycleStructure {
  std::vector<std::vector<std::size_t>> cycles;
  /// Cycle lengths sorted ascending.
  std::vector<std::size_t> cycle_type;

  friend bool operator==(const CycleStructure &,
                         const CycleStructure &) = default;
};

Permutation compose(const Permutation &p, const Permutation &q);
Permutation inverse(const Permutation &p);

/// x ∘ y ∘ x⁻¹. Equivalently result[x[i]] == x[y[i]].
Permutation conjugate(const Permutation &x, const Permutation &y);

CycleStructure cycle_structure(const Permutation &p);

/// Least common multiple of the cycle lengths.
BigInt order(const Permutation &p);

/// p^k in O(n) for any k by rotating each cycle. Negative k uses the inverse.
Permutation power(const Permutation &p, const BigInt &k);
Permutation power(const Permutation &p, std::int64_t k);

std::vector<std::size_t> fixed_points(const Permutation &p);
std::size_t fixed_point_count(const Permutation &p) noexcept;
bool is_derangement(const Permutation &p) noexcept;

/// Builds a permutation from disjoint cycles; points not mentioned are fixed.
Permutation from_cycles(std::size_t degree,
                        const std::vector<std::vector<std::size_t>> &cycles);

/// Consecutive disjoint cycles of the given lengths: (0 1)(2 3 4)...
Permutation with_cycle_type(std::span<const std::size_t> lengths);

} // namespace symstream
