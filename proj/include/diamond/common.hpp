#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamond {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Compensated (Neumaier) summation. Used wherever a coupling total feeds an
/// exact comparison, so that predicates built on the same total agree.
inline double accurate_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

/// Reduce an angle to [0, 2pi).
inline double wrap_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // -tiny + 2pi rounds up to 2pi
  return r;
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

/// Edge couplings J_1..J_{d+1}, indexed by edge label. Direction i carries
/// label i+1.
struct Couplings {
  std::vector<double> values;

  Couplings() = default;
  explicit Couplings(std::vector<double> j) : values(std::move(j)) {
    for (double v : values) require(std::isfinite(v), "couplings must be finite");
  }

  int dimension() const { return static_cast<int>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  double by_label(int label) const { return values.at(static_cast<std::size_t>(label - 1)); }
  double by_direction(int i) const { return values.at(static_cast<std::size_t>(i)); }

  /// Sum of |J|, compensated.
  double abs_total() const {
    std::vector<double> a(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) a[i] = std::abs(values[i]);
    return accurate_sum(a);
  }
};

inline void require_couplings(const Couplings& j, int d) {
  require(static_cast<int>(j.size()) == d + 1,
          "expected " + std::to_string(d + 1) + " couplings for d=" + std::to_string(d) +
              ", got " + std::to_string(j.size()));
}

/// Momentum in phase coordinates phi_i = q . alpha_i, each in [0, 2pi).
class Momentum {
 public:
  Momentum() = default;
  explicit Momentum(std::vector<double> phi) : phi_(std::move(phi)) {
    for (double p : phi_)
      require(std::isfinite(p) && p >= 0.0 && p < kTwoPi, "momentum phase outside [0, 2pi)");
  }

  /// Build from arbitrary real phases, reducing each modulo 2pi.
  static Momentum wrapped(std::vector<double> phi) {
    for (double& p : phi) {
      require(std::isfinite(p), "momentum phase must be finite");
      p = wrap_phase(p);
    }
    return Momentum(std::move(phi));
  }

  int dimension() const { return static_cast<int>(phi_.size()); }
  const std::vector<double>& phases() const { return phi_; }
  double operator[](std::size_t i) const { return phi_[i]; }

  /// phi -> -phi mod 2pi.
  Momentum negated() const {
    std::vector<double> out(phi_.size());
    for (std::size_t i = 0; i < phi_.size(); ++i) out[i] = wrap_phase(-phi_[i]);
    return Momentum(std::move(out));
  }

  friend bool operator==(const Momentum&, const Momentum&) = default;

 private:
  std::vector<double> phi_;
};

/// Couplings with components uniform in [lo, hi], reproducible per
/// (seed, draw) pair independent of evaluation order.
inline Couplings draw_couplings(int d, std::uint64_t seed, std::uint64_t draw, double lo = -2.0, double hi = 2.0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> j(static_cast<std::size_t>(d) + 1);
  for (double& v : j) v = dist(rng);
  return Couplings(std::move(j));
}

}  // namespace diamond
