#include "symstream/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace symstream::kernels {

namespace {

constexpr unsigned kMaxPattern = 24;

void check_pattern_length(unsigned m) {
  if (m > kMaxPattern)
    throw std::invalid_argument("pattern length above 24 is not supported");
}

std::size_t run_bin(const std::uint8_t *block) {
  unsigned longest = 0, run = 0;
  for (int k = 0; k < 8; ++k) {
    run = block[k] ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  return longest <= 1 ? 0 : std::min<unsigned>(longest, 4) - 1;
}

struct ChunkWalk {
  std::int64_t sum = 0, max_prefix = 0, min_prefix = 0;
};

ChunkWalk walk_chunk(const std::uint8_t *b, std::size_t lo, std::size_t hi) {
  ChunkWalk c;
  bool first = true;
  for (std::size_t i = lo; i < hi; ++i) {
    c.sum += b[i] ? 1 : -1;
    if (first) {
      c.max_prefix = c.min_prefix = c.sum;
      first = false;
    } else {
      c.max_prefix = std::max(c.max_prefix, c.sum);
      c.min_prefix = std::min(c.min_prefix, c.sum);
    }
  }
  return c;
}

// Counts windows starting at [lo, hi). Requires m <= n.
void count_windows(const std::uint8_t *b, std::size_t n, unsigned m,
                   std::size_t lo, std::size_t hi, std::uint64_t *counts) {
  const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
  std::uint32_t w = 0;
  for (unsigned k = 0; k + 1 < m; ++k) {
    std::size_t j = lo + k;
    if (j >= n)
      j -= n;
    w = (w << 1) | b[j];
  }
  for (std::size_t i = lo; i < hi; ++i) {
    std::size_t j = i + m - 1;
    if (j >= n)
      j -= n;
    w = ((w << 1) | b[j]) & mask;
    ++counts[w];
  }
}

} // namespace

std::uint64_t count_ones(Bits bits) {
  const auto *b = bits.data();
  const auto n = static_cast<std::int64_t>(bits.size());
  std::uint64_t ones = 0;
#pragma omp parallel for reduction(+ : ones) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    ones += b[i];
  return ones;
}

std::uint64_t block_imbalance(Bits bits, std::size_t block) {
  if (block == 0)
    throw std::invalid_argument("block length must be positive");
  const auto *b = bits.data();
  const auto blocks = static_cast<std::int64_t>(bits.size() / block);
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t j = 0; j < blocks; ++j) {
    std::int64_t ones = 0;
    const auto *p = b + j * block;
    for (std::size_t k = 0; k < block; ++k)
      ones += p[k];
    const std::int64_t d = 2 * ones - static_cast<std::int64_t>(block);
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

std::uint64_t transitions(Bits bits) {
  if (bits.size() < 2)
    return 0;
  const auto *b = bits.data();
  const auto n = static_cast<std::int64_t>(bits.size()) - 1;
  std::uint64_t t = 0;
#pragma omp parallel for reduction(+ : t) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    t += (b[i] != b[i + 1]);
  return t;
}

std::array<std::uint64_t, 4> longest_run_histogram(Bits bits) {
  const auto *b = bits.data();
  const auto blocks = static_cast<std::int64_t>(bits.size() / 8);
  std::uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
#pragma omp parallel for reduction(+ : c0, c1, c2, c3) schedule(static)
  for (std::int64_t j = 0; j < blocks; ++j) {
    switch (run_bin(b + 8 * j)) {
    case 0: ++c0; break;
    case 1: ++c1; break;
    case 2: ++c2; break;
    default: ++c3; break;
    }
  }
  return {c0, c1, c2, c3};
}

WalkExtremes walk_extremes(Bits bits) {
  const std::size_t n = bits.size();
  if (n == 0)
    return {};
  const int chunks = std::max(1, std::min<int>(omp_get_max_threads(),
                                               static_cast<int>(n / 4096) + 1));
  std::vector<ChunkWalk> parts(chunks);
  const auto *b = bits.data();
#pragma omp parallel for schedule(static) num_threads(chunks)
  for (int c = 0; c < chunks; ++c)
    parts[c] = walk_chunk(b, n * c / chunks, n * (c + 1) / chunks);

  WalkExtremes w;
  bool first = true;
  for (int c = 0; c < chunks; ++c) {
    if (n * (c + 1) / chunks == n * c / chunks)
      continue;
    const auto hi = w.total + parts[c].max_prefix;
    const auto lo = w.total + parts[c].min_prefix;
    w.max_prefix = first ? hi : std::max(w.max_prefix, hi);
    w.min_prefix = first ? lo : std::min(w.min_prefix, lo);
    first = false;
    w.total += parts[c].sum;
  }
  return w;
}

std::vector<std::uint64_t> pattern_counts(Bits bits, unsigned m) {
  check_pattern_length(m);
  const std::size_t n = bits.size();
  if (m == 0)
    return {};
  if (m > n)
    return serial::pattern_counts(bits, m);
  const std::size_t bins = std::size_t{1} << m;
  std::vector<std::uint64_t> counts(bins, 0);
  const auto *b = bits.data();
#pragma omp parallel
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto nt = static_cast<std::size_t>(omp_get_num_threads());
    std::vector<std::uint64_t> local(bins, 0);
    count_windows(b, n, m, n * t / nt, n * (t + 1) / nt, local.data());
#pragma omp critical
    for (std::size_t k = 0; k < bins; ++k)
      counts[k] += local[k];
  }
  return counts;
}

namespace serial {

std::uint64_t count_ones(Bits bits) {
  std::uint64_t ones = 0;
  for (auto b : bits)
    ones += b;
  return ones;
}

std::uint64_t block_imbalance(Bits bits, std::size_t block) {
  if (block == 0)
    throw std::invalid_argument("block length must be positive");
  std::uint64_t total = 0;
  for (std::size_t start = 0; start + block <= bits.size(); start += block) {
    std::int64_t ones = 0;
    for (std::size_t k = 0; k < block; ++k)
      ones += bits[start + k];
    const std::int64_t d = 2 * ones - static_cast<std::int64_t>(block);
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

std::uint64_t transitions(Bits bits) {
  std::uint64_t t = 0;
  for (std::size_t i = 1; i < bits.size(); ++i)
    t += (bits[i] != bits[i - 1]);
  return t;
}

std::array<std::uint64_t, 4> longest_run_histogram(Bits bits) {
  std::array<std::uint64_t, 4> h{};
  for (std::size_t start = 0; start + 8 <= bits.size(); start += 8)
    ++h[run_bin(bits.data() + start)];
  return h;
}

WalkExtremes walk_extremes(Bits bits) {
  if (bits.empty())
    return {};
  const auto c = walk_chunk(bits.data(), 0, bits.size());
  return {c.sum, c.max_prefix, c.min_prefix};
}

std::vector<std::uint64_t> pattern_counts(Bits bits, unsigned m) {
  check_pattern_length(m);
  const std::size_t n = bits.size();
  if (m == 0 || n == 0)
    return m == 0 ? std::vector<std::uint64_t>{}
                  : std::vector<std::uint64_t>(std::size_t{1} << m, 0);
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t w = 0;
    for (unsigned k = 0; k < m; ++k)
      w = (w << 1) | bits[(i + k) % n];
    ++counts[w];
  }
  return counts;
}

} // namespace serial

} // namespace symstream::kernels
