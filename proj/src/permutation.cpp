#include "symstream/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symstream {

namespace {

void check_degree(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("permutation degree must be at least 1");
  if (n > kMaxDegree)
    throw std::invalid_argument("permutation degree " + std::to_string(n) +
                                " exceeds " + std::to_string(kMaxDegree));
}

void check_same_degree(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("degree mismatch: " +
                                std::to_string(p.degree()) + " vs " +
                                std::to_string(q.degree()));
}

} // namespace

Permutation::Permutation(std::vector<point_type> map) : map_(std::move(map)) {
  check_degree(map_.size());
  std::vector<bool> seen(map_.size(), false);
  for (auto v : map_) {
    if (v >= map_.size() || seen[v])
      throw std::invalid_argument("not a bijection: value " +
                                  std::to_string(v) + " out of range or repeated");
    seen[v] = true;
  }
}

Permutation::Permutation(std::span<const std::size_t> map)
    : Permutation([&] {
        check_degree(map.size());
        std::vector<point_type> m(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) {
          if (map[i] >= map.size())
            throw std::invalid_argument("not a bijection: value " +
                                        std::to_string(map[i]) + " out of range");
          m[i] = static_cast<point_type>(map[i]);
        }
        return m;
      }()) {}

Permutation Permutation::identity(std::size_t degree) {
  check_degree(degree);
  std::vector<point_type> m(degree);
  std::iota(m.begin(), m.end(), point_type{0});
  return Permutation(Unchecked{}, std::move(m));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i)
      return false;
  return true;
}

Permutation compose(const Permutation &p, const Permutation &q) {
  check_same_degree(p, q);
  std::vector<Permutation::point_type> m(p.degree());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = p.map_[q.map_[i]];
  return Permutation(Permutation::Unchecked{}, std::move(m));
}

Permutation inverse(const Permutation &p) {
  std::vector<Permutation::point_type> m(p.degree());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[p.map_[i]] = static_cast<Permutation::point_type>(i);
  return Permutation(Permutation::Unchecked{}, std::move(m));
}

Permutation conjugate(const Permutation &x, const Permutation &y) {
  check_same_degree(x, y);
  std::vector<Permutation::point_type> m(x.degree());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[x.map_[i]] = x.map_[y.map_[i]];
  return Permutation(Permutation::Unchecked{}, std::move(m));
}

CycleStructure cycle_structure(const Permutation &p) {
  CycleStructure cs;
  const std::size_t n = p.degree();
  std::vector<bool> seen(n, false);
  // Scanning start points in ascending order yields min-first cycles already
  // sorted by their minimum.
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start])
      continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !seen[i]; i = p[i]) {
      seen[i] = true;
      cycle.push_back(i);
    }
    cs.cycle_type.push_back(cycle.size());
    cs.cycles.push_back(std::move(cycle));
  }
  std::sort(cs.cycle_type.begin(), cs.cycle_type.end());
  return cs;
}

BigInt order(const Permutation &p) {
  // Distinct lengths only; lcm over at most O(sqrt n) values.
  auto lengths = cycle_structure(p).cycle_type;
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  BigInt result = 1;
  for (auto len : lengths) {
    BigInt l = len;
    result = result / boost::multiprecision::gcd(result, l) * l;
  }
  return result;
}

Permutation power(const Permutation &p, const BigInt &k) {
  std::vector<Permutation::point_type> m(p.degree());
  for (const auto &cycle : cycle_structure(p).cycles) {
    const BigInt len = cycle.size();
    BigInt r = k % len;
    if (r < 0)
      r += len;
    const auto shift = static_cast<std::size_t>(r);
    for (std::size_t j = 0; j < cycle.size(); ++j)
      m[cycle[j]] = static_cast<Permutation::point_type>(
          cycle[(j + shift) % cycle.size()]);
  }
  return Permutation(Permutation::Unchecked{}, std::move(m));
}

Permutation power(const Permutation &p, std::int64_t k) {
  return power(p, BigInt(k));
}

std::vector<std::size_t> fixed_points(const Permutation &p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p[i] == i)
      out.push_back(i);
  return out;
}

std::size_t fixed_point_count(const Permutation &p) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.degree(); ++i)
    c += (p[i] == i);
  return c;
}

bool is_derangement(const Permutation &p) noexcept {
  return fixed_point_count(p) == 0;
}

Permutation from_cycles(std::size_t degree,
                        const std::vector<std::vector<std::size_t>> &cycles) {
  check_degree(degree);
  std::vector<std::size_t> m(degree);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::vector<bool> used(degree, false);
  for (const auto &c : cycles) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] >= degree || used[c[j]])
        throw std::invalid_argument("cycles are not disjoint within degree");
      used[c[j]] = true;
      m[c[j]] = c[(j + 1) % c.size()];
    }
  }
  return Permutation(std::span<const std::size_t>(m));
}

Permutation with_cycle_type(std::span<const std::size_t> lengths) {
  const std::size_t degree =
      std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t next = 0;
  for (auto len : lengths) {
    if (len == 0)
      throw std::invalid_argument("cycle length must be positive");
    std::vector<std::size_t> c(len);
    std::iota(c.begin(), c.end(), next);
    next += len;
    cycles.push_back(std::move(c));
  }
  return from_cycles(degree, cycles);
}

} // namespace symstream
