#ifndef ONEBIT_RANDOM_HPP
#define ONEBIT_RANDOM_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace onebit {

/// Random stream used throughout the simulator. One stream per consumer.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. A bijection on 64-bit integers, so distinct inputs
/// give distinct outputs.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a run seeded with `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(base + index);
}

/// n i.i.d. N(0, 1) draws, consumed from `rng` in index order.
template <class Urbg>
Eigen::VectorXd standard_normal(Urbg& rng, Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) g[i] = dist(rng);
  return g;
}

}  // namespace onebit

#endif  // ONEBIT_RANDOM_HPP
