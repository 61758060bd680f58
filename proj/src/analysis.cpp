#include "symstream/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace symstream::analysis {

double keyspace_bits(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("keyspace_bits: degree must be at least 1");
  long double sum = 0;
  for (std::size_t k = 2; k <= n; ++k)
    sum += std::log2(static_cast<long double>(k));
  return static_cast<double>(sum);
}

std::size_t min_degree_for_bits(double bits) {
  if (!(bits > 0))
    throw std::invalid_argument("min_degree_for_bits: bits must be positive");
  long double sum = 0;
  for (std::size_t n = 2;; ++n) {
    sum += std::log2(static_cast<long double>(n));
    if (sum >= bits)
      return n;
  }
}

std::size_t bits_per_point(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("bits_per_point: degree must be at least 1");
  std::size_t b = 0;
  while ((std::size_t{1} << b) < n)
    ++b;
  return b;
}

KeySizing sizing(std::size_t n, std::size_t block_bits) {
  KeySizing s;
  s.degree = n;
  s.keyspace_bits = keyspace_bits(n);
  s.array_bits = n * bits_per_point(n);
  s.state_bits = 2 * s.array_bits;
  s.block_bits = block_bits;
  s.sequence_bits = n * block_bits;
  return s;
}

BigInt derangement_count(std::size_t n) {
  BigInt prev2 = 1, prev1 = 0; // D_0, D_1
  if (n == 0)
    return prev2;
  for (std::size_t k = 2; k <= n; ++k) {
    BigInt next = BigInt(k - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

double derangement_fraction(std::size_t n) {
  // sum_{k=0..n} (-1)^k / k!
  long double term = 1, sum = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    term /= -static_cast<long double>(k);
    sum += term;
  }
  return static_cast<double>(sum);
}

double independent_positions_fraction(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("degree must be at least 1");
  return std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(n));
}

LandauResult landau(std::size_t n) {
  if (n < 1 || n > kLandauMaxDegree)
    throw std::out_of_range("landau: degree must be in [1, " +
                            std::to_string(kLandauMaxDegree) + "]");
  std::vector<std::size_t> primes;
  for (std::size_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime)
      primes.push_back(p);
  }

  // best[s]: largest lcm from distinct primes' powers with total size <= s.
  // chosen[j][s]: power of primes[j] used at budget s (0 if unused).
  std::vector<BigInt> best(n + 1, BigInt(1));
  std::vector<std::vector<std::size_t>> chosen(primes.size(),
                                               std::vector<std::size_t>(n + 1, 0));
  for (std::size_t j = 0; j < primes.size(); ++j) {
    std::vector<BigInt> next = best;
    for (std::size_t s = 0; s <= n; ++s) {
      for (std::size_t q = primes[j]; q <= s; q *= primes[j]) {
        BigInt cand = best[s - q] * q;
        if (cand > next[s]) {
          next[s] = std::move(cand);
          chosen[j][s] = q;
        }
      }
    }
    best = std::move(next);
  }

  LandauResult r{best[n], {}};
  std::size_t budget = n;
  for (std::size_t j = primes.size(); j-- > 0;) {
    if (const auto q = chosen[j][budget]; q != 0) {
      r.parts.push_back(q);
      budget -= q;
    }
  }
  r.parts.insert(r.parts.end(), budget, 1);
  return r;
}

BigInt landau_max_order(std::size_t n) { return landau(n).value; }

} // namespace symstream::analysis
