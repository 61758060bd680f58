#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "symstream/permutation.hpp"

namespace test_util {

// Independent of symstream::SampleSource so properties are not checked with
// the sampler they may be testing.
inline symstream::Permutation random_perm(std::size_t n, std::mt19937_64 &rng) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::shuffle(m.begin(), m.end(), rng);
  return symstream::Permutation(std::span<const std::size_t>(m));
}

inline symstream::Permutation perm(std::initializer_list<std::size_t> m) {
  std::vector<std::size_t> v(m);
  return symstream::Permutation(std::span<const std::size_t>(v));
}

} // namespace test_util
