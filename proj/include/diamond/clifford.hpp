#pragma once

#include <Eigen/Dense>

#include <vector>

#include "common.hpp"
#include "pauli.hpp"

namespace diamond {

inline constexpr int kDefaultMaxGenerators = 16;

/// Irreducible complex representation of Cl_k on 2^{floor(k/2)} dimensions.
/// For odd k the representation S_+ is selected, on which
/// i^m c_1 ... c_{2m+1} = +1.
struct MajoranaRep {
  int k = 0;
  int qubits = 0;                   // floor(k/2)
  std::vector<PauliString> string;  // c_1..c_k as exact Pauli strings
  std::vector<Eigen::MatrixXcd> c;  // same, materialized; entries in {0, +-1, +-i}

  Eigen::Index dim() const { return Eigen::Index{1} << qubits; }
  const Eigen::MatrixXcd& operator[](int one_based) const { return c.at(static_cast<std::size_t>(one_based - 1)); }
};

/// Chirality i^m c_1 ... c_{2m+1} of an odd-generator set.
inline PauliString chirality(const std::vector<PauliString>& gens, int qubits) {
  const int m = static_cast<int>(gens.size()) / 2;
  return product(gens, qubits).times_i(m);
}

/// Jordan-Wigner chains: c_{2j-1} = Z^{(j-1)} X I..., c_{2j} = Z^{(j-1)} Y I...,
/// and for odd k, c_{2m+1} = +-Z^{(m)} with the sign fixing S_+.
inline MajoranaRep majorana_rep(int k, int max_generators = kDefaultMaxGenerators) {
  require(k >= 2, "Clifford algebra needs k >= 2 generators");
  require(k <= max_generators, "generator count exceeds configured cap");
  MajoranaRep rep;
  rep.k = k;
  rep.qubits = k / 2;
  const int m = rep.qubits;

  for (int j = 0; j < m; ++j) {
    PauliString zs = PauliString::identity(m);
    for (int q = 0; q < j; ++q) zs = zs * PauliString::single(m, q, 'Z');
    rep.string.push_back(zs * PauliString::single(m, j, 'X'));
    rep.string.push_back(zs * PauliString::single(m, j, 'Y'));
  }
  if (k % 2 == 1) {
    PauliString zall = PauliString::identity(m);
    for (int q = 0; q < m; ++q) zall = zall * PauliString::single(m, q, 'Z');
    rep.string.push_back(zall);
    if (chirality(rep.string, m) == -PauliString::identity(m)) rep.string.back() = -rep.string.back();
  }
  for (const auto& s : rep.string) rep.c.push_back(s.dense());
  return rep;
}

/// a_i = (c_{2i-1} + i c_{2i})/2, a_i^dag = (c_{2i-1} - i c_{2i})/2, b = c_{2m+1}.
struct LadderOps {
  std::vector<Eigen::MatrixXcd> a;
  std::vector<Eigen::MatrixXcd> a_dag;
  bool has_b = false;
  Eigen::MatrixXcd b;
  Eigen::VectorXcd vacuum;   // unit joint kernel vector of all a_i
  double vacuum_b_eigenvalue = 0.0;  // b|vac> = (this)|vac> when has_b
};

/// The Fock vacuum is the unique joint kernel vector of all a_i. On S_+ it
/// satisfies b|vac> = (-1)^m |vac>.
inline LadderOps ladder_ops(const MajoranaRep& rep) {
  LadderOps ops;
  const int m = rep.qubits;
  const cplx i_unit{0.0, 1.0};
  for (int j = 1; j <= m; ++j) {
    ops.a.push_back(0.5 * (rep[2 * j - 1] + i_unit * rep[2 * j]));
    ops.a_dag.push_back(0.5 * (rep[2 * j - 1] - i_unit * rep[2 * j]));
  }
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd stacked(n * m, n);
  for (int j = 0; j < m; ++j) stacked.middleRows(n * j, n) = ops.a[static_cast<std::size_t>(j)];
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(stacked);
  const Eigen::MatrixXcd kernel = lu.kernel();
  if (lu.rank() != n - 1 || kernel.cols() != 1)
    throw std::runtime_error("joint kernel of annihilators is not one-dimensional");
  ops.vacuum = kernel.col(0).normalized();

  if (rep.k % 2 == 1) {
    ops.has_b = true;
    ops.b = rep[rep.k];
    const cplx lambda = ops.vacuum.dot(ops.b * ops.vacuum);
    ops.vacuum_b_eigenvalue = lambda.real();
    if ((ops.b * ops.vacuum - lambda * ops.vacuum).norm() > 1e-12)
      throw std::runtime_error("vacuum is not a b eigenvector");
  }
  return ops;
}

/// nu(d) = 2^{floor(d/2)}: dimension of the (+1)-eigenspace of D.
inline std::uint64_t nu(int d) { return std::uint64_t{1} << (d / 2); }

/// Site operator D for the diamond crystal of dimension d, as an exact
/// Pauli string over the k = d+2 generator representation:
///   D = (-1)^{floor((d+1)/2)} i^{floor(d/2)+1} prod_{i=1}^{d+1} (c_i c_{d+2}).
inline PauliString d_operator_string(const MajoranaRep& rep) {
  const int d = rep.k - 2;
  require(d >= 2, "D operator needs d >= 2");
  const auto& last = rep.string.back();
  PauliString acc = PauliString::identity(rep.qubits);
  for (int i = 0; i <= d; ++i) acc = acc * (rep.string[static_cast<std::size_t>(i)] * last);
  const int sign_power = 2 * ((d + 1) / 2);
  return acc.times_i(sign_power + d / 2 + 1);
}

inline Eigen::MatrixXcd d_operator(int d) {
  require(d >= 2, "D operator needs d >= 2");
  return d_operator_string(majorana_rep(d + 2)).dense();
}

/// Ladder form (-1)^{floor(d/2)+1} prod_{i=1}^{floor(d/2)+1} (1 - 2 a_i^dag a_i).
inline Eigen::MatrixXcd d_operator_from_ladder(int d) {
  require(d >= 2, "D operator needs d >= 2");
  const auto rep = majorana_rep(d + 2);
  const auto ops = ladder_ops(rep);
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(n, n);
  const int terms = d / 2 + 1;
  for (int j = 0; j < terms; ++j) {
    const auto& a = ops.a[static_cast<std::size_t>(j)];
    const auto& ad = ops.a_dag[static_cast<std::size_t>(j)];
    acc = acc * (Eigen::MatrixXcd::Identity(n, n) - 2.0 * ad * a);
  }
  return ((terms % 2) ? -1.0 : 1.0) * acc;
}

/// sigma^k = i c_k c_{d+2}, k = 1..d+1, as Pauli strings.
inline std::vector<PauliString> spin_op_strings(const MajoranaRep& rep) {
  const int d = rep.k - 2;
  require(d >= 2, "spin operators need d >= 2");
  std::vector<PauliString> out;
  const auto& last = rep.string.back();
  for (int k = 0; k <= d; ++k) out.push_back((rep.string[static_cast<std::size_t>(k)] * last).times_i(1));
  return out;
}

inline std::vector<Eigen::MatrixXcd> spin_ops(int d) {
  require(d >= 2, "spin operators need d >= 2");
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& s : spin_op_strings(majorana_rep(d + 2))) out.push_back(s.dense());
  return out;
}

/// Orthonormal basis (columns) of the (+1)-eigenspace of a Hermitian involution.
inline Eigen::MatrixXcd plus_eigenspace(const Eigen::MatrixXcd& involution) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(involution);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.0) cols.push_back(i);
  Eigen::MatrixXcd basis(involution.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cols[j]);
  return basis;
}

}  // namespace diamond
