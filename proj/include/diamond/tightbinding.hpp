#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "common.hpp"
#include "spectrum.hpp"

namespace diamond {

/// Nearest-neighbour hopping amplitudes t_1..t_{d+1}; direction i carries
/// t_{i+1}. The on-site term is zero.
struct Hoppings {
  std::vector<cplx> values;

  Hoppings() = default;
  explicit Hoppings(std::vector<cplx> t) : values(std::move(t)) {
    for (const auto& v : values) require(std::isfinite(v.real()) && std::isfinite(v.imag()), "hoppings must be finite");
  }

  /// t = 2J, the identification with the Kitaev couplings.
  static Hoppings from_couplings(const Couplings& j) {
    std::vector<cplx> t;
    for (double v : j.values) t.emplace_back(2.0 * v, 0.0);
    return Hoppings(std::move(t));
  }

  std::size_t size() const { return values.size(); }
};

/// r(phi) = t_1 + sum_{i=1}^d t_{i+1} e^{i phi_i}.
inline cplx r_of_q(const Hoppings& t, const Momentum& m) {
  const int d = m.dimension();
  require(static_cast<int>(t.size()) == d + 1, "expected d+1 hoppings");
  cplx acc = t.values[0];
  for (int i = 1; i <= d; ++i) acc += t.values[static_cast<std::size_t>(i)] * std::polar(1.0, m[static_cast<std::size_t>(i - 1)]);
  return acc;
}

/// [[0, r], [r*, 0]].
inline Eigen::Matrix2cd tb_bloch_matrix(const Hoppings& t, const Momentum& m) {
  const cplx r = r_of_q(t, m);
  Eigen::Matrix2cd a;
  a << cplx{0.0, 0.0}, r, std::conj(r), cplx{0.0, 0.0};
  return a;
}

struct TightBindingEnergy {
  double e_plus = 0.0;
  double e_minus = 0.0;
};

inline TightBindingEnergy tb_energy(const Hoppings& t, const Momentum& m) {
  const double e = std::abs(r_of_q(t, m));
  return {e, -e};
}

/// |xi_+(J, phi) - E_+(2J, phi)|.
inline double compare_models(const Couplings& j, const Momentum& m) {
  return std::abs(dispersion(j, m).xi_plus - tb_energy(Hoppings::from_couplings(j), m).e_plus);
}

}  // namespace diamond
