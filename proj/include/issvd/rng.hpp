#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace issvd::rng {

// Stream roles used when deriving per-task seeds from the master seed.
// Keeping these distinct makes every draw independent of evaluation order.
enum Role : std::uint64_t {
  kPlacement = 1,
  kLeftFactor = 2,
  kRightFactor = 3,
  kNoise = 4,
  kScoreU = 5,
  kScoreV = 6,
  kBenchmark = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a path of counters.
inline std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p));
  return s;
}

inline std::uint64_t hash_bytes(std::uint64_t seed, const std::string& text) {
  std::uint64_t s = splitmix64(seed ^ 0xbb67ae8584caa73bULL);
  for (unsigned char c : text) s = splitmix64(s ^ c);
  return s;
}

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

/// k distinct indices from {0, ..., m-1}, sorted ascending.
inline std::vector<Eigen::Index> sample_without_replacement(Eigen::Index m, Eigen::Index k,
                                                            std::mt19937_64& g) {
  if (k > m) k = m;
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i;
  // partial Fisher-Yates
  for (Eigen::Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, m - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(g))]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace issvd::rng
