#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace testing {

inline constexpr double kPi = 3.14159265358979323846;

// Input generator for property tests. Seeded per test so failures replay.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace testing
