// Compares the serial reference scorers against the OpenMP kernels on a
// synthetic corpus.  Usage: bench-metrics [segments] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "slowads/metrics.hpp"
#include "slowads/rng.hpp"

using namespace slowads;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<std::string> synthetic_corpus(std::size_t n, std::uint64_t seed) {
  static const char* pool[] = {"the",  "quick", "brown",  "fox",   "jumps", "over", "lazy",
                               "dog",  "12.5",  "hello,", "world", "naïve", "café", "2024",
                               "a",    "b",     "street", "river", "3-day", "said:", "x",
                               "with", "text",  "metric", "score", "run"};
  constexpr std::size_t pool_n = sizeof(pool) / sizeof(pool[0]);
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    const std::size_t len = 8 + rng.bounded(22);
    for (std::size_t k = 0; k < len; ++k) {
      if (k) s.push_back(' ');
      s += pool[rng.bounded(pool_n)];
    }
    out.push_back(std::move(s));
  }
  return out;
}

template <typename F>
double time_ms(F&& fn, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t segments = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  const auto refs = synthetic_corpus(segments, 1);
  auto hyps = refs;
  Rng rng(2);
  for (auto& h : hyps)
    if (rng.bounded(3) == 0) h = synthetic_corpus(1, rng.next())[0];

  std::printf("segments: %zu  threads: %d  repeats: %d (best-of)\n", segments,
              omp_get_max_threads(), repeats);

  double serial_score = 0, parallel_score = 0;
  const double bleu_serial =
      time_ms([&] { serial_score = bleu_corpus_serial(hyps, refs).score; }, repeats);
  const double bleu_parallel =
      time_ms([&] { parallel_score = bleu_corpus(hyps, refs).score; }, repeats);
  std::printf("bleu  serial %8.2f ms   openmp %8.2f ms   speedup %5.2fx   (score %.4f)\n",
              bleu_serial, bleu_parallel, bleu_serial / bleu_parallel, parallel_score);
  if (serial_score != parallel_score) {
    std::fprintf(stderr, "MISMATCH: serial %.12f vs openmp %.12f\n", serial_score,
                 parallel_score);
    return 1;
  }

  const double chrf_serial =
      time_ms([&] { serial_score = chrf_corpus_serial(hyps, refs).score; }, repeats);
  const double chrf_parallel =
      time_ms([&] { parallel_score = chrf_corpus(hyps, refs).score; }, repeats);
  std::printf("chrf  serial %8.2f ms   openmp %8.2f ms   speedup %5.2fx   (score %.4f)\n",
              chrf_serial, chrf_parallel, chrf_serial / chrf_parallel, parallel_score);
  if (serial_score != parallel_score) {
    std::fprintf(stderr, "MISMATCH: serial %.12f vs openmp %.12f\n", serial_score,
                 parallel_score);
    return 1;
  }
  return 0;
}
