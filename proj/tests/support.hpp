#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "diamond/common.hpp"

namespace testing_support {

// Hand-rolled property generators. Every generator is seeded, so a failing
// case can be replayed from the printed seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  diamond::Couplings couplings(int d, double lo = -2.0, double hi = 2.0) {
    std::vector<double> j(static_cast<std::size_t>(d) + 1);
    for (double& v : j) v = uniform(lo, hi);
    return diamond::Couplings(std::move(j));
  }

  diamond::Momentum momentum(int d) {
    std::vector<double> phi(static_cast<std::size_t>(d));
    for (double& p : phi) p = uniform(0.0, diamond::kTwoPi);
    return diamond::Momentum(std::move(phi));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline Eigen::MatrixXcd anticommutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b + b * a; }
inline Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }

}  // namespace testing_support
