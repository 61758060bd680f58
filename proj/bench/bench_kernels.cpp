// Serial reference kernels against the OpenMP kernels, plus keystream
// throughput at a few degrees.
//
//   bench_kernels [bits=8388608] [repeats=5]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "symstream/bitstream.hpp"
#include "symstream/kernels.hpp"
#include "symstream/keystream.hpp"
#include "symstream/sampler.hpp"

namespace k = symstream::kernels;
using clk = std::chrono::steady_clock;

template <class F> double best_ms(int repeats, F &&f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = clk::now();
    f();
    const auto t1 = clk::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

volatile std::uint64_t sink;

int main(int argc, char **argv) {
  const std::size_t nbits = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 8u << 20;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> bytes(nbits / 8);
  for (auto &b : bytes)
    b = static_cast<std::uint8_t>(rng());
  const auto bits = symstream::BitStream::from_bytes(bytes);
  const auto span = bits.bits();

  std::printf("threads %d, %zu bits\n", omp_get_max_threads(), bits.size());
  std::printf("%-22s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");
  auto row = [&](const char *name, auto serial, auto parallel) {
    const double s = best_ms(repeats, serial);
    const double p = best_ms(repeats, parallel);
    std::printf("%-22s %10.2f %10.2f %8.2f\n", name, s, p, s / p);
  };
  row("count_ones", [&] { sink = k::serial::count_ones(span); },
      [&] { sink = k::count_ones(span); });
  row("block_imbalance(128)", [&] { sink = k::serial::block_imbalance(span, 128); },
      [&] { sink = k::block_imbalance(span, 128); });
  row("transitions", [&] { sink = k::serial::transitions(span); },
      [&] { sink = k::transitions(span); });
  row("longest_run_histogram",
      [&] { sink = k::serial::longest_run_histogram(span)[0]; },
      [&] { sink = k::longest_run_histogram(span)[0]; });
  row("walk_extremes", [&] { sink = k::serial::walk_extremes(span).total; },
      [&] { sink = k::walk_extremes(span).total; });
  row("pattern_counts(3)", [&] { sink = k::serial::pattern_counts(span, 3)[0]; },
      [&] { sink = k::pattern_counts(span, 3)[0]; });

  std::printf("\n%-8s %12s %12s\n", "degree", "MB/s", "ns/byte");
  constexpr std::size_t stream = 16u << 20;
  for (std::size_t n : {16u, 32u, 64u, 128u, 256u, 1024u}) {
    symstream::SampleSource src(n);
    symstream::KeystreamState ks(symstream::derangement(n, src),
                                 symstream::derangement(n, src),
                                 symstream::derive_state_bytes({"bench", n}));
    std::vector<std::uint8_t> out(stream);
    const double ms = best_ms(repeats, [&] { ks.generate_into(out); });
    std::printf("%-8zu %12.1f %12.3f\n", n, stream / 1e3 / ms, ms * 1e6 / stream);
  }
}
