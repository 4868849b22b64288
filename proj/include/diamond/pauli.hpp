#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "common.hpp"

namespace diamond {

/// Element i^phase * X^x * Z^z of the n-qubit Pauli group with exact phase.
/// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
/// computational-basis index, so dense() agrees with Kronecker products.
class PauliString {
 public:
  static constexpr int kMaxQubits = 62;

  PauliString() = default;

  static PauliString identity(int n) {
    if (n < 0 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    PauliString p;
    p.n_ = n;
    return p;
  }

  /// Single-qubit operator op in {'I','X','Y','Z'} on `qubit`.
  static PauliString single(int n, int qubit, char op) {
    PauliString p = identity(n);
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - qubit);
    switch (op) {
      case 'I': break;
      case 'X': p.x_ = bit; break;
      case 'Z': p.z_ = bit; break;
      case 'Y':  // Y = i X Z
        p.x_ = bit;
        p.z_ = bit;
        p.phase_ = 1;
        break;
      default: throw std::invalid_argument("unknown Pauli symbol");
    }
    return p;
  }

  int num_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int phase() const { return phase_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }

  /// Multiply by i^k.
  PauliString times_i(int k) const {
    PauliString p = *this;
    p.phase_ = ((p.phase_ + k) % 4 + 4) % 4;
    return p;
  }
  PauliString operator-() const { return times_i(2); }

  PauliString operator*(const PauliString& rhs) const {
    check_compatible(rhs);
    PauliString p;
    p.n_ = n_;
    p.x_ = x_ ^ rhs.x_;
    p.z_ = z_ ^ rhs.z_;
    // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
    const int swaps = std::popcount(z_ & rhs.x_);
    p.phase_ = (phase_ + rhs.phase_ + 2 * swaps) % 4;
    return p;
  }

  bool commutes_with(const PauliString& rhs) const {
    check_compatible(rhs);
    return (std::popcount((z_ & rhs.x_) ^ (x_ & rhs.z_)) % 2) == 0;
  }

  bool is_hermitian() const { return (phase_ % 2) == (std::popcount(x_ & z_) % 2); }

  /// True when the operator is +I, -I, +iI or -iI.
  bool is_scalar() const { return x_ == 0 && z_ == 0; }

  cplx coefficient() const {
    static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_];
  }

  cplx trace() const { return is_scalar() ? coefficient() * static_cast<double>(dim()) : cplx{0, 0}; }

  /// this (x) rhs.
  PauliString tensor(const PauliString& rhs) const {
    if (n_ + rhs.n_ > kMaxQubits) throw std::invalid_argument("tensor product too large");
    PauliString p;
    p.n_ = n_ + rhs.n_;
    p.x_ = (x_ << rhs.n_) | rhs.x_;
    p.z_ = (z_ << rhs.n_) | rhs.z_;
    p.phase_ = (phase_ + rhs.phase_) % 4;
    return p;
  }

  /// I^{(offset)} (x) this (x) I^{(total - offset - n)}.
  PauliString embedded(int total, int offset) const {
    if (offset < 0 || offset + n_ > total) throw std::invalid_argument("embedding out of range");
    return identity(offset).tensor(*this).tensor(identity(total - offset - n_));
  }

  /// Image of basis vector |col>: the single nonzero (row, value) in column col.
  std::pair<std::uint64_t, cplx> column(std::uint64_t col) const {
    const double sign = (std::popcount(z_ & col) % 2) ? -1.0 : 1.0;
    return {col ^ x_, sign * coefficient()};
  }

  Eigen::MatrixXcd dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::uint64_t c = 0; c < dim(); ++c) {
      const auto [r, v] = column(c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
    return m;
  }

  Eigen::SparseMatrix<cplx> sparse() const {
    const auto n = static_cast<Eigen::Index>(dim());
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(dim());
    for (std::uint64_t c = 0; c < dim(); ++c) {
      const auto [r, v] = column(c);
      trips.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), v);
    }
    Eigen::SparseMatrix<cplx> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  void check_compatible(const PauliString& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("Pauli strings act on different qubit counts");
  }

  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;  // power of i
};

/// Ordered product of a list of strings, left to right.
inline PauliString product(const std::vector<PauliString>& factors, int n) {
  PauliString acc = PauliString::identity(n);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

/// Dimension of the joint (+1)-eigenspace of pairwise commuting Hermitian
/// Pauli strings, via trace of prod (I + g)/2 expanded over subsets.
inline std::uint64_t joint_plus_dimension(const std::vector<PauliString>& gens) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  if (gens.size() > 24) throw std::invalid_argument("too many generators for subset expansion");
  const int n = gens.front().num_qubits();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (!gens[a].commutes_with(gens[b])) throw std::invalid_argument("generators do not commute");

  const std::uint64_t subsets = std::uint64_t{1} << gens.size();
  long long trace_sum = 0;  // real: Hermitian commuting products have real trace
  for (std::uint64_t s = 0; s < subsets; ++s) {
    PauliString acc = PauliString::identity(n);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (s & (std::uint64_t{1} << g)) acc = acc * gens[g];
    if (acc.is_scalar()) trace_sum += static_cast<long long>(std::lround(acc.trace().real()));
  }
  return static_cast<std::uint64_t>(trace_sum / static_cast<long long>(subsets));
}

}  // namespace diamond
