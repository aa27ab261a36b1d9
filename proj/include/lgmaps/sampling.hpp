#pragma once

/// @file sampling.hpp
/// @brief Seeded random inputs for property checks.

#include <cstdint>
#include <random>

#include "core.hpp"
#include "so3.hpp"

namespace lgmaps {

class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Vec3<double> unit3()
  {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3<double> v;
    do { v = Vec3<double>(n(rng_), n(rng_), n(rng_)); } while (v.norm() < 1e-8);
    return v.normalized();
  }

  /// Random direction with norm uniform in [rmin, rmax].
  Vec3<double> vec3(double rmin, double rmax) { return uniform(rmin, rmax) * unit3(); }

  /// Screw with |x| in [0, xmax] and |y| in [0, ymax].
  Vec6<double> screw6(double xmax, double ymax) { return screw<double>(vec3(0.0, xmax), vec3(0.0, ymax)); }

  Pose<double> pose(double rmax = 2.0) { return Pose<double>{so3::exp(vec3(0.0, 3.1)), vec3(0.0, rmax)}; }

  std::mt19937_64 & engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace lgmaps
