// Acceptance run: prints one PASS/FAIL line per criterion, exits 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "diamond/clifford.hpp"
#include "diamond/gap.hpp"
#include "diamond/lattice.hpp"
#include "diamond/spectrum.hpp"
#include "diamond/spinham.hpp"
#include "diamond/tightbinding.hpp"

using namespace diamond;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome bloch_equivalence() {
  double worst = 0.0;
  for (int d : {2, 3, 4})
    for (int n : {2, 3, 4}) {
      const auto t = build_torus(d, n);
      for (std::uint64_t k = 0; k < 10; ++k)
        worst = std::max(worst, verify_bloch_equivalence(t, draw_couplings(d, kSeed, k)));
    }
  return {worst < 1e-8, fmt("90 (d,N,draw) cases, max deviation %.3e", worst)};
}

// Local minima of xi_+ on the periodic grid (8-neighbour, non-strict) whose
// value is below the Lipschitz bound sum_i |df/dphi_i| * h/2: any grid point
// nearest a true zero must fall under it.
Outcome honeycomb() {
  const Couplings j({1.0, 1.0, 1.0});
  const double at_gamma = dispersion(j, Momentum({0.0, 0.0})).xi_plus;
  const double at_k = dispersion(j, Momentum({2 * kPi / 3, 4 * kPi / 3})).xi_plus;

  constexpr int n = 64;
  std::ostringstream csv;
  write_bands_csv(csv, j, 2, n);
  std::istringstream is(csv.str());
  std::string line;
  std::getline(is, line);
  std::vector<double> xi;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string cell;
    for (int c = 0; c < 3; ++c) std::getline(ls, cell, ',');
    xi.push_back(std::stod(cell));
  }
  if (xi.size() != static_cast<std::size_t>(n * n)) return {false, fmt("CSV has %zu rows", xi.size())};

  const double h = kTwoPi / n;
  const double threshold = 2.0 * (std::abs(j.by_direction(1)) + std::abs(j.by_direction(2))) * h / 2.0;
  int minima = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double v = xi[static_cast<std::size_t>(a * n + b)];
      if (v >= threshold) continue;
      bool local = true;
      for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const int aa = (a + da + n) % n, bb = (b + db + n) % n;
          local = local && v <= xi[static_cast<std::size_t>(aa * n + bb)];
        }
      minima += local;
    }
  const bool ok = at_gamma == 6.0 && at_k < 1e-12 && minima == 2;
  return {ok, fmt("xi(0,0)=%.17g, xi(K)=%.3e, near-zero minima=%d", at_gamma, at_k, minima)};
}

Outcome gap_criterion() {
  int included = 0, disagree = 0, below_bound = 0;
  for (int d : {2, 3, 4})
    for (std::uint64_t k = 0; k < 1000; ++k) {
      const auto j = draw_couplings(d, kSeed + 1, k);
      const double total = j.abs_total();
      if (std::abs(coupling_margin(j)) < 1e-3 * total) continue;
      ++included;
      const double numeric = min_gap_numeric(j, 48);
      const bool oracle = numeric < 1e-4 * total;
      if (oracle != has_zero(j)) ++disagree;
      if (!has_zero(j) && numeric < 2.0 * std::abs(coupling_margin(j)) * (1.0 - 1e-9)) ++below_bound;
    }
  return {disagree == 0 && below_bound == 0,
          fmt("%d included draws, %d disagreements, %d gapped minima below 2|margin|", included, disagree, below_bound)};
}

Outcome zero_soundness() {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  int checked = 0, bad = 0;
  double worst = 0.0;
  auto check = [&](const Couplings& j) {
    if (!has_zero(j)) return;
    ++checked;
    const auto z = find_zero(j);
    const double total = j.abs_total();
    const double rel = z ? std::abs(f_of_q(j, *z)) / (total > 0 ? total : 1.0) : 1.0;
    worst = std::max(worst, rel);
    if (!z || !(std::abs(f_of_q(j, *z)) <= 1e-9 * total)) ++bad;
  };
  for (int d = 2; d <= 6; ++d)
    for (int k = 0; k < 2000; ++k) {
      std::vector<double> v(static_cast<std::size_t>(d) + 1);
      for (double& x : v) x = uni(rng);
      check(Couplings(v));
      // zero couplings
      v[static_cast<std::size_t>(k) % v.size()] = 0.0;
      if (k % 3 == 0) v[static_cast<std::size_t>(k + 1) % v.size()] = 0.0;
      check(Couplings(v));
      // boundary: largest equals sum of the rest
      for (double& x : v) x = uni(rng);
      double rest = 0.0;
      for (std::size_t i = 1; i < v.size(); ++i) rest += std::abs(v[i]);
      v[0] = (k % 2 ? -1.0 : 1.0) * rest;
      check(Couplings(v));
    }
  check(Couplings({0.0, 0.0, 0.0}));
  check(Couplings({1.0, 1.0, 2.0}));
  check(Couplings({1.0, 0.0, 1.0, 0.0}));

  int polys = 0;
  double closure = 0.0;
  std::uniform_real_distribution<double> side(0.0, 1.0);
  std::uniform_int_distribution<int> count(3, 8);
  while (polys < 10000) {
    std::vector<double> a(static_cast<std::size_t>(count(rng)));
    for (double& x : a) x = side(rng) * std::pow(10.0, 3.0 * side(rng) - 1.5);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (!polygon_exists(sorted)) continue;
    ++polys;
    double sum = 0.0;
    for (double x : a) sum += x;
    closure = std::max(closure, closure_residual(a, polygon_angles(a)) / sum);
  }
  const bool ok = bad == 0 && closure < 1e-12;
  return {ok, fmt("%d gapless sets, %d unsound, max |f|/sum|J|=%.2e; 10000 polygons, max closure/sum=%.2e",
                  checked, bad, worst, closure)};
}

Outcome complementarity() {
  long points = 0, disagree = 0;
  for (int d : {2, 3, 4})
    for_each_simplex_point(d, 40, [&](const std::vector<int>& k) {
      std::vector<double> x;
      for (int v : k) x.push_back(v / 40.0);
      const Couplings j(x);
      ++points;
      if (gapped_region(j) == has_zero(j)) ++disagree;
    });
  return {disagree == 0, fmt("%ld simplex points, %ld disagreements", points, disagree)};
}

Outcome clifford() {
  bool anti = true, chiral = true, nu_ok = true;
  double ladder = 0.0;
  for (int k = 2; k <= 12; ++k) {
    const auto rep = majorana_rep(k);
    const auto n = rep.dim();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (int a = 1; a <= k; ++a)
      for (int b = a; b <= k; ++b) {
        const Eigen::MatrixXcd ac = rep[a] * rep[b] + rep[b] * rep[a];
        anti = anti && ac == (a == b ? Eigen::MatrixXcd(2.0 * id) : Eigen::MatrixXcd::Zero(n, n));
      }
    if (k % 2 == 1) chiral = chiral && chirality(rep.string, rep.qubits) == PauliString::identity(rep.qubits);

    const auto ops = ladder_ops(rep);
    const auto m = ops.a.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const Eigen::MatrixXcd car = ops.a[a] * ops.a_dag[b] + ops.a_dag[b] * ops.a[a] - (a == b ? id : 0.0 * id);
        const Eigen::MatrixXcd aa = ops.a[a] * ops.a[b] + ops.a[b] * ops.a[a];
        ladder = std::max({ladder, car.cwiseAbs().maxCoeff(), aa.cwiseAbs().maxCoeff()});
      }
      if (ops.has_b) {
        const Eigen::MatrixXcd ba = ops.b * ops.a[a] + ops.a[a] * ops.b;
        ladder = std::max(ladder, ba.cwiseAbs().maxCoeff());
      }
    }
    if (ops.has_b) ladder = std::max(ladder, (ops.b * ops.b - id).cwiseAbs().maxCoeff());
  }
  for (int d = 2; d <= 6; ++d)
    nu_ok = nu_ok && static_cast<std::uint64_t>(plus_eigenspace(d_operator(d)).cols()) == nu(d);

  const auto rep4 = majorana_rep(4);
  const Eigen::MatrixXcd product4 = -(rep4[1] * rep4[2] * rep4[3] * rep4[4]);
  const bool d2 = d_operator(2) == product4 && (d_operator_from_ladder(2) - product4).cwiseAbs().maxCoeff() < 1e-14;

  const bool ok = anti && chiral && ladder < 1e-14 && nu_ok && d2;
  return {ok, fmt("anticommutation exact=%d, S+ chirality=+I %d, ladder residual=%.1e, nu(d) d<=6 %d, d=2 D=-c1c2c3c4 %d",
                  anti, chiral, ladder, nu_ok, d2)};
}

Outcome operator_identities() {
  double h_d = 0.0, h_u = 0.0, u_involution = 0.0;
  int max_d = 0, systems = 0;
  for (int d = 2;; ++d) {
    const int qubits = 2 * ((d + 2) / 2);
    if ((std::uint64_t{1} << qubits) > kDefaultMaxSpinDim) break;
    max_d = d;
    const auto t = build_torus(d, 1);
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto r = verify_operator_identities(build_spin_hamiltonian(t, draw_couplings(d, kSeed + 3, k)));
      h_d = std::max(h_d, r.h_d_commutator);
      h_u = std::max(h_u, r.h_u_commutator);
      u_involution = std::max({u_involution, r.u_square, r.u_hermitian, r.u_trace});
      ++systems;
    }
  }
  const bool ok = h_d < 1e-12 && h_u < 1e-12 && u_involution < 1e-12;
  return {ok, fmt("N=1 tori d=2..%d, %d systems: |[H,D~]|=%.1e, |[H,u]|=%.1e, u involution/trace residual=%.1e",
                  max_d, systems, h_d, h_u, u_involution)};
}

Outcome tight_binding() {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<int> dim(2, 5);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0), phase(0.0, kTwoPi);
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k < 10000; ++k) {
    const int d = dim(rng);
    std::vector<double> j(static_cast<std::size_t>(d) + 1), phi(static_cast<std::size_t>(d));
    for (double& v : j) v = coupling(rng);
    for (double& p : phi) p = phase(rng);
    const Couplings jj(j);
    const double r = compare_models(jj, Momentum::wrapped(phi));
    const double scaled = r / (1.0 + jj.abs_total());
    worst = std::max(worst, scaled);
    ok = ok && r < 1e-14 * (1.0 + jj.abs_total());
  }
  return {ok, fmt("10000 draws d<=5, max residual/(1+sum|J|)=%.2e", worst)};
}

Outcome lattice_geometry() {
  double beta_sum = 0.0, beta_norm = 0.0, t_err = 0.0;
  bool interior = true, tori = true;
  for (int d = 2; d <= 8; ++d) {
    const auto b = make_basis(d);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d + 1);
    for (const auto& beta : b.beta) {
      sum += beta;
      beta_norm = std::max(beta_norm, std::abs(beta.squaredNorm() - d / (d + 1.0)));
    }
    beta_sum = std::max(beta_sum, sum.norm());
    for (int i = 0; i <= d; ++i) {
      const auto r = check_fundamental_domain(b, i);
      t_err = std::max({t_err, std::abs(r.t1 - d / (2.0 * (d + 1))), std::abs(r.t2 - (d + 2) / (2.0 * (d + 1))),
                        r.residual1, r.residual2});
      interior = interior && r.interior;
    }
  }
  int built = 0;
  for (int d = 2; d <= 8; ++d)
    for (int n = 1; n <= 4; ++n) {
      if (std::pow(n, d) > 5000) continue;
      const auto c = check_torus(build_torus(d, n));
      tori = tori && c.counts_ok && c.regular && c.bipartite && c.connected && c.balanced;
      ++built;
    }
  const bool ok = beta_sum < 1e-12 && beta_norm < 1e-12 && t_err < 1e-12 && interior && tori;
  return {ok, fmt("|sum beta|=%.1e, ||beta|^2-d/(d+1)|=%.1e, t error=%.1e, t in (0,1) %d, %d tori invariant %d",
                  beta_sum, beta_norm, t_err, interior, built, tori)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"bloch-torus spectral equivalence", bloch_equivalence},
      {"honeycomb reproduction", honeycomb},
      {"gapless iff polygon inequalities", gap_criterion},
      {"constructive zero and polygon closure", zero_soundness},
      {"gapped region complementarity", complementarity},
      {"clifford algebra", clifford},
      {"operator identities", operator_identities},
      {"tight-binding identification", tight_binding},
      {"lattice geometry", lattice_geometry},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
