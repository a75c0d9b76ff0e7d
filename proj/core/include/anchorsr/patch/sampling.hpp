#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace anchorsr {

/// Uniform integer in [0, bound) by rejection; unlike the std distributions
/// the sequence is identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// `n` indices into a pool of `pool_size`. Uniform without replacement while
/// n <= pool_size; beyond that the pool is cycled, each pass a fresh shuffle
/// seeded from `seed` and the pass number. Throws DataError on an empty pool.
std::vector<std::size_t> sample_indices(std::size_t pool_size, std::size_t n, std::uint64_t seed);

template <class T>
std::vector<T> sample_pairs(std::span<const T> pool, std::size_t n, std::uint64_t seed) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i : sample_indices(pool.size(), n, seed)) out.push_back(pool[i]);
  return out;
}

template <class T>
std::vector<T> sample_pairs(const std::vector<T>& pool, std::size_t n, std::uint64_t seed) {
  return sample_pairs(std::span<const T>(pool), n, seed);
}

/// Mixes a stream id into a seed (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace anchorsr
