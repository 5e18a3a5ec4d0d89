#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace slowads {

// splitmix64; chosen over std::mt19937 + distributions because the output
// stream must be identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased value in [0, n); n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      using std::swap;
      swap(v[i - 1], v[bounded(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Stable seed derivation for per-sentence / per-pair randomness.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (salt * 0xd6e8feb86659fd93ULL));
  return r.next();
}

inline std::uint64_t hash_text(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// n distinct indices from [0, len), ascending (original order preserved).
std::vector<std::size_t> sample_indices(std::size_t len, std::size_t n, std::uint64_t seed);

}  // namespace slowads
