#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "lattice.hpp"

namespace diamond {

/// f(phi) = 2 (J_1 + sum_{i=1}^d J_{i+1} e^{i phi_i}).
inline cplx f_of_q(const Couplings& j, const Momentum& m) {
  const int d = m.dimension();
  require_couplings(j, d);
  cplx acc{j.by_direction(0), 0.0};
  for (int i = 1; i <= d; ++i) acc += j.by_direction(i) * std::polar(1.0, m[static_cast<std::size_t>(i - 1)]);
  return 2.0 * acc;
}

struct DispersionResult {
  Momentum momentum;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
};

inline DispersionResult dispersion(const Couplings& j, const Momentum& m) {
  const double xi = std::abs(f_of_q(j, m));
  return {m, xi, -xi};
}

/// [[0, i f], [-i f*, 0]].
inline Eigen::Matrix2cd bloch_hamiltonian(const Couplings& j, const Momentum& m) {
  const cplx f = f_of_q(j, m);
  const cplx i_unit{0.0, 1.0};
  Eigen::Matrix2cd h;
  h << cplx{0.0, 0.0}, i_unit * f, -i_unit * std::conj(f), cplx{0.0, 0.0};
  return h;
}

/// The N^d phases phi_i = 2 pi m_i / N, first coordinate slowest.
inline std::vector<Momentum> bz_grid(int d, int n) {
  require(d >= 1, "grid dimension must be >= 1");
  require(n >= 1, "grid size must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(n);
  std::vector<Momentum> out;
  out.reserve(count);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> phi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      phi[static_cast<std::size_t>(i)] = kTwoPi * static_cast<double>(idx[static_cast<std::size_t>(i)]) / static_cast<double>(n);
    out.emplace_back(std::move(phi));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < n) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

/// Real antisymmetric 2L x 2L matrix of the flux-free Majorana form, rows in
/// torus vertex order. A(v, v') = +2 J_l for v on sublattice 1.
struct QuadraticForm {
  Eigen::MatrixXd A;
};

inline QuadraticForm quadratic_form(const DiamondTorus& t, const Couplings& j) {
  require_couplings(j, t.dimension());
  const auto n = static_cast<Eigen::Index>(t.vertices().size());
  QuadraticForm q{Eigen::MatrixXd::Zero(n, n)};
  for (const auto& e : t.edges()) {
    const double w = 2.0 * j.by_label(e.label());
    const auto v = static_cast<Eigen::Index>(e.from);
    const auto w_idx = static_cast<Eigen::Index>(e.to);
    q.A(v, w_idx) += w;
    q.A(w_idx, v) -= w;
  }
  return q;
}

/// Sorted eigenvalues of the Hermitian matrix iA.
inline std::vector<double> majorana_spectrum(const QuadraticForm& q) {
  require(q.A.rows() == q.A.cols(), "quadratic form must be square");
  require((q.A + q.A.transpose()).cwiseAbs().maxCoeff() == 0.0, "quadratic form must be antisymmetric");
  const Eigen::MatrixXcd h = cplx{0.0, 1.0} * q.A.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed to converge");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  for (double v : out)
    if (!std::isfinite(v)) throw std::runtime_error("eigensolver produced a non-finite eigenvalue");
  std::sort(out.begin(), out.end());
  return out;
}

/// Sorted multiset {+-|f(phi)| : phi on the N-grid}.
inline std::vector<double> bloch_multiset(const Couplings& j, int d, int n) {
  std::vector<double> out;
  for (const auto& m : bz_grid(d, n)) {
    const double xi = std::abs(f_of_q(j, m));
    out.push_back(xi);
    out.push_back(-xi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_sorted_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::logic_error("spectral multisets differ in size");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

inline constexpr double kBlochTolerance = 1e-8;

/// Max deviation between the torus Majorana spectrum and the Bloch bands on
/// the matching momentum grid. `tamper` may modify A before diagonalization.
inline double verify_bloch_equivalence(const DiamondTorus& t, const Couplings& j,
                                       const std::function<void(QuadraticForm&)>& tamper = {}) {
  require(t.period() >= 2, "spectral equivalence needs N >= 2");
  auto q = quadratic_form(t, j);
  if (tamper) tamper(q);
  return max_sorted_deviation(majorana_spectrum(q), bloch_multiset(j, t.dimension(), t.period()));
}

/// Band table over bz_grid(d, n): phi_1..phi_d,xi_plus,xi_minus.
inline void write_bands_csv(std::ostream& os, const Couplings& j, int d, int n) {
  require_couplings(j, d);
  os << std::setprecision(17);
  for (int i = 1; i <= d; ++i) os << "phi_" << i << ',';
  os << "xi_plus,xi_minus\n";
  for (const auto& m : bz_grid(d, n)) {
    const auto r = dispersion(j, m);
    for (double p : m.phases()) os << p << ',';
    os << r.xi_plus << ',' << r.xi_minus << '\n';
  }
}

}  // namespace diamond
