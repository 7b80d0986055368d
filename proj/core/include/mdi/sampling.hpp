#pragma once

#include <cstdint>
#include <random>

#include "mdi/types.hpp"

namespace mdi {

using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent stream seeds from (seed, salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point gaussian_point(Rng& rng, Eigen::Index d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point p(d);
  for (Eigen::Index i = 0; i < d; ++i) p(i) = scale * normal(rng);
  return p;
}

inline Point unit_direction(Rng& rng, Eigen::Index d) {
  Point p = gaussian_point(rng, d);
  const double n = p.norm();
  if (n == 0.0) {
    p.setZero();
    p(0) = 1.0;
    return p;
  }
  return p / n;
}

}  // namespace mdi
