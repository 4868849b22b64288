#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"
#include "spectrum.hpp"

namespace diamond {

/// Strict polygon inequality on ascending side lengths: a_max < sum of rest.
/// Zero entries are ignored.
inline bool polygon_exists(std::span<const double> sorted_sides) {
  std::vector<double> a;
  for (double x : sorted_sides) {
    require(std::isfinite(x) && x >= 0.0, "side lengths must be nonnegative");
    if (x > 0.0) a.push_back(x);
  }
  require(a.size() >= 2, "need at least two positive sides");
  require(std::is_sorted(a.begin(), a.end()), "side lengths must be sorted ascending");
  const double largest = a.back();
  a.pop_back();
  return largest < accurate_sum(a);
}

/// Edge directions theta_i of a closed polygon with the given side lengths.
struct PolygonAngles {
  std::vector<double> theta;
};

/// |sum_i a_i e^{i theta_i}|.
inline double closure_residual(std::span<const double> sides, const PolygonAngles& p) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < sides.size(); ++i) acc += std::polar(sides[i], p.theta[i]);
  return std::abs(acc);
}

namespace detail {

/// Angle opposite side c in a triangle with sides a, b, c, accurate for
/// needle-like triangles (Kahan's formulation). Degenerate inputs clamp.
inline double angle_opposite(double c, double a, double b) {
  if (a < b) std::swap(a, b);
  const double mu = (b >= c) ? c - (a - b) : b - (a - c);
  const double num = ((a - b) + c) * std::max(mu, 0.0);
  const double den = (a + (b + c)) * ((a - c) + b);
  if (den <= 0.0) return std::numbers::pi;
  return 2.0 * std::atan(std::sqrt(num / den));
}

/// Directions (0, theta_y, theta_z) with x + y e^{i theta_y} + z e^{i theta_z} = 0.
inline std::array<double, 3> triangle_directions(double x, double y, double z) {
  const double at_start = angle_opposite(y, x, z);  // between sides x and z
  const double at_end = angle_opposite(z, x, y);    // between sides x and y
  return {0.0, std::numbers::pi - at_end, std::numbers::pi + at_start};
}

inline constexpr double kDegenerateSlack = 8.0 * std::numeric_limits<double>::epsilon();

/// Ascending positive sides; fills theta in the same order.
inline void close_sorted(const std::vector<double>& a, std::vector<double>& theta) {
  const std::size_t n = a.size();
  theta.assign(n, 0.0);
  const double largest = a.back();
  const double rest = accurate_sum(std::span<const double>(a.data(), n - 1));
  const double slack = rest - largest;
  if (slack <= kDegenerateSlack * (rest + largest)) {
    // collinear: longest side runs back against the others
    theta[n - 1] = std::numbers::pi;
    return;
  }
  if (n == 3) {
    const auto t = triangle_directions(a[0], a[1], a[2]);
    std::copy(t.begin(), t.end(), theta.begin());
    return;
  }

  // Split off a triangle (a_0, a_last, e) and close (e, a_1..a_{n-2}) recursively.
  const double eps = 0.5 * std::min(a[0], slack);
  const double e = largest - a[0] + eps;

  std::vector<double> sub;
  sub.reserve(n - 1);
  sub.push_back(e);
  for (std::size_t i = 1; i + 1 < n; ++i) sub.push_back(a[i]);
  std::vector<std::size_t> order(sub.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sub[l] < sub[r]; });
  std::vector<double> sub_sorted(sub.size());
  for (std::size_t i = 0; i < order.size(); ++i) sub_sorted[i] = sub[order[i]];
  std::vector<double> sub_theta_sorted;
  close_sorted(sub_sorted, sub_theta_sorted);
  std::vector<double> sub_theta(sub.size());
  for (std::size_t i = 0; i < order.size(); ++i) sub_theta[order[i]] = sub_theta_sorted[i];

  for (std::size_t i = 1; i + 1 < n; ++i) theta[i] = sub_theta[i];

  // Triangle a_0 e^{i t0} + a_last e^{i t1} + e e^{i t2} = 0 gives
  // a_0 e^{i t0} + a_last e^{i t1} = e e^{i(t2 + pi)}; rotate so this equals
  // e e^{i psi}, psi being the direction of side e in the sub-polygon.
  const auto tri = triangle_directions(a[0], largest, e);
  const double rotation = sub_theta[0] - (tri[2] + std::numbers::pi);
  theta[0] = tri[0] + rotation;
  theta[n - 1] = tri[1] + rotation;
}

}  // namespace detail

/// Closed polygon with the given positive side lengths (any order). Requires
/// max <= sum of the rest; the equality case returns the collinear solution.
inline PolygonAngles polygon_angles(std::span<const double> sides) {
  require(sides.size() >= 2, "need at least two sides");
  for (double x : sides) require(std::isfinite(x) && x > 0.0, "side lengths must be positive");
  std::vector<std::size_t> order(sides.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sides[l] < sides[r]; });
  std::vector<double> a(sides.size());
  for (std::size_t i = 0; i < order.size(); ++i) a[i] = sides[order[i]];

  const double largest = a.back();
  const double rest = accurate_sum(std::span<const double>(a.data(), a.size() - 1));
  if (rest - largest < -detail::kDegenerateSlack * (rest + largest))
    throw std::domain_error("no polygon: longest side exceeds the sum of the others");

  std::vector<double> theta_sorted;
  detail::close_sorted(a, theta_sorted);
  PolygonAngles out;
  out.theta.resize(sides.size());
  for (std::size_t i = 0; i < order.size(); ++i) out.theta[order[i]] = wrap_phase(theta_sorted[i]);
  return out;
}

/// min_i (sum_{j != i} |J_j| - |J_i|) = sum |J| - 2 max |J|.
inline double coupling_margin(const Couplings& j) {
  double largest = 0.0;
  for (double v : j.values) largest = std::max(largest, std::abs(v));
  return j.abs_total() - 2.0 * largest;
}

/// |J_i| <= sum_{j != i} |J_j| for all i.
inline bool has_zero(const Couplings& j) {
  double largest = 0.0;
  for (double v : j.values) largest = std::max(largest, std::abs(v));
  return 2.0 * largest <= j.abs_total();
}

/// Some normalized |J_i| / sum |J| exceeds 1/2. The comparison is carried
/// out as 2|J_i| > sum |J| so it is the exact complement of has_zero.
inline bool gapped_region(const Couplings& j) {
  const double total = j.abs_total();
  require(total > 0.0, "couplings must not all vanish");
  for (double v : j.values)
    if (2.0 * std::abs(v) > total) return true;
  return false;
}

/// Explicit phases phi* with f(J, phi*) = 0, or nullopt when the dispersion
/// is gapped.
inline std::optional<Momentum> find_zero(const Couplings& j) {
  const int d = j.dimension();
  require(d >= 1, "need at least two couplings");
  if (!has_zero(j)) return std::nullopt;

  std::vector<double> sides;
  std::vector<std::size_t> which;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j.values[i] != 0.0) {
      sides.push_back(std::abs(j.values[i]));
      which.push_back(i);
    }
  std::vector<double> theta(j.size(), 0.0);
  if (!sides.empty()) {
    const auto poly = polygon_angles(sides);
    for (std::size_t k = 0; k < which.size(); ++k) theta[which[k]] = poly.theta[k];
  }
  // J_i e^{i phi_i} = |J_i| e^{i(theta_i - theta_0 + s_0)} with s the sign phase.
  auto sign_phase = [&](std::size_t i) { return j.values[i] < 0.0 ? std::numbers::pi : 0.0; };
  const double reference = theta[0] - sign_phase(0);
  std::vector<double> phi(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    phi[k - 1] = (theta[k] - sign_phase(k)) - reference;
  }
  return Momentum::wrapped(std::move(phi));
}

namespace detail {

/// Visit |f| over the n^d phase grid, tracking the minimum.
struct GridMinimum {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> index;
};

inline GridMinimum grid_minimum(const Couplings& j, int grid_n) {
  const int d = j.dimension();
  const auto n = static_cast<std::size_t>(grid_n);
  // per-axis tables J_{i+1} e^{i phi}
  std::vector<std::vector<cplx>> table(static_cast<std::size_t>(d), std::vector<cplx>(n));
  for (int i = 0; i < d; ++i)
    for (std::size_t m = 0; m < n; ++m)
      table[static_cast<std::size_t>(i)][m] =
          j.by_direction(i + 1) * std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(grid_n));

  GridMinimum best;
  best.index.assign(static_cast<std::size_t>(d), 0);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<cplx> partial(static_cast<std::size_t>(d) + 1);
  partial[0] = cplx{j.by_direction(0), 0.0};
  for (int i = 0; i < d; ++i) partial[static_cast<std::size_t>(i) + 1] = partial[static_cast<std::size_t>(i)] + table[static_cast<std::size_t>(i)][0];

  const auto last = static_cast<std::size_t>(d - 1);
  while (true) {
    const cplx base = partial[last];
    const auto& row = table[last];
    for (std::size_t m = 0; m < n; ++m) {
      const double v = std::norm(base + row[m]);
      if (v < best.value) {
        best.value = v;
        best.index = idx;
        best.index[last] = static_cast<int>(m);
      }
    }
    // advance the outer odometer digits
    int axis = d - 2;
    while (axis >= 0) {
      auto a = static_cast<std::size_t>(axis);
      if (++idx[a] < grid_n) break;
      idx[a] = 0;
      --axis;
    }
    if (axis < 0) break;
    for (auto i = static_cast<std::size_t>(axis); i < last; ++i) partial[i + 1] = partial[i] + table[i][static_cast<std::size_t>(idx[i])];
  }
  best.value = 2.0 * std::sqrt(best.value);
  return best;
}

/// Second refinement stage on F = |f/2|^2 with its analytic Hessian.
/// Coordinate descent stalls at collinear configurations, which are saddles
/// whose descent cone lies between the axes; there we step along the
/// negative-curvature eigenvector. Otherwise a shifted Newton step. A step
/// is kept only if F decreases.
inline double newton_polish(const Couplings& j, std::vector<double>& phi, int iterations) {
  const int d = j.dimension();
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(phi.data(), d);
  auto residual = [&](const Eigen::VectorXd& p) {
    cplx acc{j.by_direction(0), 0.0};
    for (int i = 0; i < d; ++i) acc += j.by_direction(i + 1) * std::polar(1.0, p(i));
    return acc;
  };
  const double scale = j.abs_total() * j.abs_total();
  double value = std::norm(residual(x));
  for (int iter = 0; iter < iterations && value > 0.0; ++iter) {
    const cplx g = residual(x);
    Eigen::VectorXd grad(d);
    Eigen::MatrixXd hess(d, d);
    std::vector<cplx> dg(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) dg[static_cast<std::size_t>(k)] = cplx{0.0, j.by_direction(k + 1)} * std::polar(1.0, x(k));
    for (int k = 0; k < d; ++k) {
      const auto& a = dg[static_cast<std::size_t>(k)];
      grad(k) = 2.0 * std::real(std::conj(g) * a);
      for (int l = 0; l < d; ++l) hess(k, l) = 2.0 * std::real(std::conj(dg[static_cast<std::size_t>(l)]) * a);
      hess(k, k) -= 2.0 * std::real(std::conj(g) * j.by_direction(k + 1) * std::polar(1.0, x(k)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    const double lowest = es.eigenvalues()(0);
    const double shift = 1.5 * std::max(0.0, -lowest) + 1e-14 * scale;
    std::vector<Eigen::VectorXd> dirs{-(hess + shift * Eigen::MatrixXd::Identity(d, d)).ldlt().solve(grad)};
    if (lowest < 0.0) {
      Eigen::VectorXd v = es.eigenvectors().col(0);
      if (v.dot(grad) > 0.0) v = -v;
      dirs.push_back(v * std::sqrt(-lowest / hess.norm()));
      dirs.push_back(v);
    }
    double best = value;
    Eigen::VectorXd best_x = x;
    for (const auto& dir : dirs) {
      double t = 1.0;
      for (int h = 0; h < 40; ++h, t *= 0.5) {
        const Eigen::VectorXd trial = x + t * dir;
        const double v = std::norm(residual(trial));
        if (v < best) {
          best = v;
          best_x = trial;
          break;
        }
      }
    }
    if (best >= value) break;
    value = best;
    x = best_x;
  }
  for (int i = 0; i < d; ++i) phi[static_cast<std::size_t>(i)] = x(i);
  return 2.0 * std::sqrt(value);
}

}  // namespace detail

inline constexpr int kRefineIterations = 100;

/// Minimum of xi_+ over the grid_n^d phase grid, refined by coordinate
/// descent (fixed iteration count, step halved whenever a sweep stalls) and
/// then by detail::newton_polish. Never increases during refinement.
inline double min_gap_numeric(const Couplings& j, int grid_n, Momentum* argmin = nullptr) {
  require(grid_n >= 2, "grid_n must be >= 2");
  const int d = j.dimension();
  require(d >= 1, "need at least two couplings");
  const auto start = detail::grid_minimum(j, grid_n);

  std::vector<double> phi(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    phi[static_cast<std::size_t>(i)] = kTwoPi * static_cast<double>(start.index[static_cast<std::size_t>(i)]) / grid_n;

  auto eval = [&](const std::vector<double>& p) {
    cplx acc{j.by_direction(0), 0.0};
    for (int i = 0; i < d; ++i) acc += j.by_direction(i + 1) * std::polar(1.0, p[static_cast<std::size_t>(i)]);
    return 2.0 * std::abs(acc);
  };

  double best = std::min(start.value, eval(phi));
  double step = kTwoPi / grid_n;
  for (int iter = 0; iter < kRefineIterations; ++iter) {
    bool improved = false;
    for (int i = 0; i < d; ++i) {
      for (double dir : {1.0, -1.0}) {
        auto trial = phi;
        trial[static_cast<std::size_t>(i)] += dir * step;
        const double v = eval(trial);
        if (v < best) {
          best = v;
          phi = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  best = std::min(best, detail::newton_polish(j, phi, kRefineIterations));
  if (argmin) *argmin = Momentum::wrapped(phi);
  return best;
}

struct GapReport {
  bool has_zero = false;
  std::optional<Momentum> zero_momentum;
  double min_numeric = 0.0;
  double margin = 0.0;
};

inline GapReport gap_report(const Couplings& j, int grid_n) {
  GapReport r;
  r.has_zero = has_zero(j);
  r.margin = coupling_margin(j);
  r.zero_momentum = find_zero(j);
  r.min_numeric = min_gap_numeric(j, grid_n);
  return r;
}

/// Barycentric grid of the simplex at the given resolution: every
/// (k_0..k_d) >= 0 with sum = resolution, visited lexicographically.
template <class Visitor>
void for_each_simplex_point(int d, int resolution, Visitor&& visit) {
  require(d >= 1 && resolution >= 1, "invalid simplex grid");
  std::vector<int> k(static_cast<std::size_t>(d) + 1, 0);
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d) {
      k[static_cast<std::size_t>(d)] = remaining;
      visit(std::as_const(k));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  recurse(recurse, 0, resolution);
}

/// x_0..x_d,gapped over the barycentric grid.
inline void write_gapmap_csv(std::ostream& os, int d, int resolution) {
  require(d >= 2, "dimension d must be >= 2");
  os << std::setprecision(17);
  for (int i = 0; i <= d; ++i) os << "x_" << i << ',';
  os << "gapped\n";
  for_each_simplex_point(d, resolution, [&](const std::vector<int>& k) {
    std::vector<double> x;
    for (int v : k) x.push_back(static_cast<double>(v) / resolution);
    for (double v : x) os << v << ',';
    os << (gapped_region(Couplings(x)) ? 1 : 0) << '\n';
  });
}

}  // namespace diamond
