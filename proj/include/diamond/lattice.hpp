#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <nlohmann/json.hpp>
#include <queue>
#include <vector>

#include "common.hpp"

namespace diamond {

/// Root lattice A_d inside the zero-sum hyperplane W of R^{d+1}, together
/// with the edge vectors beta_0..beta_d of the diamond crystal and the dual
/// basis of the alpha_i within W.
struct LatticeBasis {
  int d = 0;
  std::vector<Eigen::VectorXd> alpha;   // alpha[0..d-1] holds alpha_1..alpha_d
  Eigen::VectorXd p;
  std::vector<Eigen::VectorXd> beta;    // beta[0..d]
  std::vector<Eigen::VectorXd> dual_b;  // <dual_b[j], alpha[i]> = delta_ij
};

inline LatticeBasis make_basis(int d) {
  require(d >= 2, "dimension d must be >= 2");
  LatticeBasis b;
  b.d = d;
  const int n = d + 1;
  b.p = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a(i) = 1.0;
    a(d) = -1.0;
    b.alpha.push_back(a);
    b.p += a;
  }
  b.p /= static_cast<double>(n);

  b.beta.push_back(-b.p);
  for (int i = 0; i < d; ++i) b.beta.push_back(b.alpha[static_cast<std::size_t>(i)] - b.p);

  // dual_b[j] = sum_k (G^{-1})_{jk} alpha_k with G the Gram matrix of the alphas.
  Eigen::MatrixXd basis(n, d);
  for (int i = 0; i < d; ++i) basis.col(i) = b.alpha[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const Eigen::MatrixXd coeff = gram.ldlt().solve(Eigen::MatrixXd::Identity(d, d));
  const Eigen::MatrixXd dual = basis * coeff;
  for (int j = 0; j < d; ++j) b.dual_b.push_back(dual.col(j));
  return b;
}

/// Vertex of the finite diamond torus: integer cell coordinates mod N and the
/// sublattice bit (0 = A_d, 1 = A_d + p).
struct Vertex {
  std::vector<int> mu;
  int s = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::size_t from = 0;  // sublattice-1 endpoint
  std::size_t to = 0;    // sublattice-0 endpoint
  int direction = 0;     // i in 0..d
  int label() const { return direction + 1; }
};

/// Quotient of the diamond crystal by N * A_d.
class DiamondTorus {
 public:
  DiamondTorus(int d, int n) : d_(d), n_(n) {
    require(d >= 2, "dimension d must be >= 2");
    require(n >= 1, "torus period N must be >= 1");
    cells_ = 1;
    for (int i = 0; i < d; ++i) cells_ *= static_cast<std::size_t>(n);

    vertices_.reserve(2 * cells_);
    for (int s = 0; s < 2; ++s)
      for (std::size_t c = 0; c < cells_; ++c) vertices_.push_back(Vertex{cell_coords(c), s});

    edges_.reserve((static_cast<std::size_t>(d) + 1) * cells_);
    for (std::size_t c = 0; c < cells_; ++c) {
      const std::size_t from = cells_ + c;
      edges_.push_back(Edge{from, c, 0});
      for (int i = 1; i <= d; ++i) {
        auto mu = cell_coords(c);
        mu[static_cast<std::size_t>(i - 1)] = (mu[static_cast<std::size_t>(i - 1)] + 1) % n;
        edges_.push_back(Edge{from, cell_index(mu), i});
      }
    }
  }

  int dimension() const { return d_; }
  int period() const { return n_; }
  std::size_t cells() const { return cells_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Index in the (s, mu)-lexicographic vertex ordering.
  std::size_t index_of(const Vertex& v) const {
    require(v.s == 0 || v.s == 1, "sublattice bit must be 0 or 1");
    require(static_cast<int>(v.mu.size()) == d_, "vertex coordinate length mismatch");
    for (int m : v.mu) require(m >= 0 && m < n_, "vertex coordinate outside [0, N)");
    return static_cast<std::size_t>(v.s) * cells_ + cell_index(v.mu);
  }

  std::size_t cell_index(const std::vector<int>& mu) const {
    std::size_t idx = 0;
    for (int m : mu) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(m);
    return idx;
  }

  std::vector<int> cell_coords(std::size_t c) const {
    std::vector<int> mu(static_cast<std::size_t>(d_));
    for (int i = d_ - 1; i >= 0; --i) {
      mu[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::size_t>(n_));
      c /= static_cast<std::size_t>(n_);
    }
    return mu;
  }

  /// Adjacency list with edge multiplicity (parallel edges at N=1 repeat).
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices_.size());
    for (const auto& e : edges_) {
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
    }
    return adj;
  }

 private:
  int d_;
  int n_;
  std::size_t cells_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

inline DiamondTorus build_torus(int d, int n) { return DiamondTorus(d, n); }

/// Two vertices joined by d+1 parallel edges e_0..e_d, labeled i+1.
struct BaseGraph {
  int d = 0;
  std::vector<int> labels;
  int vertex_count() const { return 2; }
  int edge_count() const { return static_cast<int>(labels.size()); }
};

inline BaseGraph base_graph(int d) {
  require(d >= 2, "dimension d must be >= 2");
  BaseGraph g;
  g.d = d;
  for (int i = 0; i <= d; ++i) g.labels.push_back(i + 1);
  return g;
}

inline int covering_map(const DiamondTorus& t, const Vertex& v) {
  (void)t.index_of(v);  // validates membership
  return v.s;
}

inline int covering_map_edge(const DiamondTorus& t, std::size_t edge_index) {
  if (edge_index >= t.edges().size()) throw std::out_of_range("unknown edge index");
  return t.edges()[edge_index].direction;
}

/// Representative position sum_i n_i alpha_i + s p.
inline Eigen::VectorXd vertex_position(const LatticeBasis& b, const Vertex& v, int n) {
  require(static_cast<int>(v.mu.size()) == b.d, "vertex coordinate length mismatch");
  require(v.s == 0 || v.s == 1, "sublattice bit must be 0 or 1");
  for (int m : v.mu) require(m >= 0 && m < n, "vertex coordinate outside [0, N)");
  Eigen::VectorXd x = static_cast<double>(v.s) * b.p;
  for (int i = 0; i < b.d; ++i) x += static_cast<double>(v.mu[static_cast<std::size_t>(i)]) * b.alpha[static_cast<std::size_t>(i)];
  return x;
}

/// Barycentric parameters placing P_1 = -(d/2) beta_i and P_2 = P_1 - beta_i
/// on the ray -t sum_{j != i} (beta_i - beta_j).
struct FundamentalDomainReport {
  double t1 = 0.0;
  double t2 = 0.0;
  double residual1 = 0.0;  // |P_1 - reconstruction|
  double residual2 = 0.0;
  bool interior = false;   // both t in (0, 1)
};

inline FundamentalDomainReport check_fundamental_domain(const LatticeBasis& b, int i) {
  require(i >= 0 && i <= b.d, "beta index out of range");
  const auto& bi = b.beta[static_cast<std::size_t>(i)];
  Eigen::VectorXd w = Eigen::VectorXd::Zero(bi.size());
  for (int j = 0; j <= b.d; ++j)
    if (j != i) w -= bi - b.beta[static_cast<std::size_t>(j)];

  const double half_d = 0.5 * static_cast<double>(b.d);
  const Eigen::VectorXd p1 = -half_d * bi;
  const Eigen::VectorXd p2 = p1 - bi;

  FundamentalDomainReport r;
  const double ww = w.squaredNorm();
  r.t1 = p1.dot(w) / ww;
  r.t2 = p2.dot(w) / ww;
  r.residual1 = (p1 - r.t1 * w).norm();
  r.residual2 = (p2 - r.t2 * w).norm();
  r.interior = r.t1 > 0.0 && r.t1 < 1.0 && r.t2 > 0.0 && r.t2 < 1.0;
  return r;
}

/// Structural checks on a built torus.
struct TorusCheck {
  bool counts_ok = false;
  bool regular = false;    // every vertex has degree d+1
  bool bipartite = false;  // every edge joins s=1 to s=0
  bool connected = false;
  bool balanced = false;   // both parts have N^d vertices
};

inline TorusCheck check_torus(const DiamondTorus& t) {
  TorusCheck c;
  const auto d = static_cast<std::size_t>(t.dimension());
  c.counts_ok = t.vertices().size() == 2 * t.cells() && t.edges().size() == (d + 1) * t.cells();

  const auto adj = t.adjacency();
  c.regular = true;
  for (const auto& nb : adj) c.regular = c.regular && nb.size() == d + 1;

  c.bipartite = true;
  for (const auto& e : t.edges())
    c.bipartite = c.bipartite && t.vertices()[e.from].s == 1 && t.vertices()[e.to].s == 0;

  std::size_t ones = 0;
  for (const auto& v : t.vertices()) ones += static_cast<std::size_t>(v.s);
  c.balanced = ones == t.cells() && t.vertices().size() - ones == t.cells();

  std::vector<bool> seen(adj.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
  }
  c.connected = reached == adj.size();
  return c;
}

inline nlohmann::json torus_to_json(const DiamondTorus& t) {
  const auto b = make_basis(t.dimension());
  nlohmann::json out;
  out["d"] = t.dimension();
  out["N"] = t.period();
  auto verts = nlohmann::json::array();
  for (const auto& v : t.vertices()) {
    const auto x = vertex_position(b, v, t.period());
    verts.push_back({{"mu", v.mu}, {"s", v.s}, {"pos", std::vector<double>(x.data(), x.data() + x.size())}});
  }
  auto edges = nlohmann::json::array();
  for (const auto& e : t.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"direction", e.direction}, {"label", e.label()}});
  out["vertices"] = std::move(verts);
  out["edges"] = std::move(edges);
  return out;
}

}  // namespace diamond
