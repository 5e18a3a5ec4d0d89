#include "slowads/rng.hpp"

#include <algorithm>
#include <numeric>

#include "slowads/error.hpp"

namespace slowads {

std::vector<std::size_t> sample_indices(std::size_t len, std::size_t n, std::uint64_t seed) {
  if (n > len) fail("sample: n exceeds population size");
  std::vector<std::size_t> idx(len);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.bounded(len - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace slowads
