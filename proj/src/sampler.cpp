#include "symstream/sampler.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace symstream {

std::uint64_t SampleSource::next() noexcept {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SampleSource::below(std::uint64_t bound) {
  if (bound == 0)
    throw std::invalid_argument("SampleSource::below: bound must be nonzero");
  // Accept words below the largest multiple of bound representable in 2^64.
  const std::uint64_t limit = -bound % bound; // == 2^64 mod bound
  for (;;) {
    const std::uint64_t r = next();
    if (r >= limit)
      return r % bound;
  }
}

Permutation uniform_permutation(std::size_t n, SampleSource &src) {
  if (n == 0 || n > kMaxDegree)
    throw std::invalid_argument("uniform_permutation: invalid degree");
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(m[i], m[src.below(i + 1)]);
  return Permutation(std::span<const std::size_t>(m));
}

DerangementDraw derangement_with_attempts(std::size_t n, SampleSource &src) {
  if (n < 2)
    throw std::invalid_argument("no derangement exists for degree < 2");
  for (std::size_t attempts = 1;; ++attempts) {
    auto p = uniform_permutation(n, src);
    if (is_derangement(p))
      return {std::move(p), attempts};
  }
}

Permutation derangement(std::size_t n, SampleSource &src) {
  return derangement_with_attempts(n, src).perm;
}

} // namespace symstream
