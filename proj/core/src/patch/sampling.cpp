#include "anchorsr/patch/sampling.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "anchorsr/error.hpp"

namespace anchorsr {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("uniform_below: bound must be positive");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> sample_indices(std::size_t pool_size, std::size_t n, std::uint64_t seed) {
  if (pool_size == 0) throw DataError("sample_pairs: empty pool");
  std::vector<std::size_t> out;
  out.reserve(n);
  std::vector<std::size_t> perm(pool_size);
  for (std::uint64_t pass = 0; out.size() < n; ++pass) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(derive_seed(seed, pass));
    const std::size_t take = std::min(pool_size, n - out.size());
    // partial Fisher-Yates: the first `take` slots are a uniform sample
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, pool_size - i));
      std::swap(perm[i], perm[j]);
      out.push_back(perm[i]);
    }
  }
  return out;
}

}  // namespace anchorsr
