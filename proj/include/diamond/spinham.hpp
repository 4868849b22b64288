#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "clifford.hpp"
#include "common.hpp"
#include "lattice.hpp"
#include "pauli.hpp"

namespace diamond {

inline constexpr std::uint64_t kDefaultMaxSpinDim = std::uint64_t{1} << 16;

using SparseC = Eigen::SparseMatrix<cplx>;

/// Operators of a spin-model instance on a diamond torus, acting on the
/// tensor product of one k = d+2 Majorana representation per vertex.
///
/// Even d: Majoranas on distinct sites carry a string of site D operators,
/// c_j^v = (prod_{w<v} D_w) c_j^{(v)}, so edge Majoranas of different sites
/// anticommute and u_e = i c_l^v c_l^{v'}. Every sigma^k is even under D, so
/// the strings commute with H.
///
/// Odd d: sigma^k anticommutes with D and no site-product string can commute
/// with H, so Majoranas act as c_j^{(v)} (x) Id elsewhere. Cross-site
/// Majoranas then commute, i c c' is anti-Hermitian, and the Hermitian link
/// involution is u_e = c_l^v c_l^{v'}. Links sharing exactly one vertex
/// anticommute in this case (only possible for N >= 2).
struct SpinSystem {
  struct Term {
    PauliString op;  // sigma_v^l sigma_v'^l
    double weight;   // -J_l
  };

  int d = 0;
  int site_qubits = 0;
  int total_qubits = 0;
  std::vector<Term> terms;
  std::vector<PauliString> u_strings;  // one per torus edge, torus edge order
  PauliString d_tilde_string;

  SparseC H;
  std::vector<SparseC> u_ops;
  SparseC D_tilde;

  std::uint64_t site_dim() const { return std::uint64_t{1} << site_qubits; }
  std::uint64_t total_dim() const { return std::uint64_t{1} << total_qubits; }
};

namespace detail {

struct SiteOperators {
  MajoranaRep rep;
  PauliString d_site;
  std::vector<PauliString> sigma;
};

// Site size is already bounded by the total-dimension cap, so the generator
// cap is lifted to d+2 (d = 15 still fits 2^16 on a single cell).
inline SiteOperators site_operators(int d) {
  SiteOperators s{majorana_rep(d + 2, std::max(d + 2, kDefaultMaxGenerators)), {}, {}};
  s.d_site = d_operator_string(s.rep);
  s.sigma = spin_op_strings(s.rep);
  return s;
}

inline int check_dimension(const DiamondTorus& t, std::uint64_t max_dim) {
  const int site_qubits = t.dimension() / 2 + 1;
  const auto vertices = t.vertices().size();
  const auto total_qubits = static_cast<std::uint64_t>(site_qubits) * vertices;
  if (total_qubits > 62 || (std::uint64_t{1} << total_qubits) > max_dim)
    throw std::invalid_argument("spin system dimension exceeds configured cap");
  return static_cast<int>(total_qubits);
}

inline bool strings_embedded(const SiteOperators& s) { return (s.rep.k - 2) % 2 == 0; }

/// Global Majorana c_j at vertex v (j is 1-based).
inline PauliString global_majorana(const SiteOperators& s, std::size_t v, int j, int total) {
  const int q = s.rep.qubits;
  PauliString out = s.rep.string[static_cast<std::size_t>(j - 1)].embedded(total, static_cast<int>(v) * q);
  if (strings_embedded(s))
    for (std::size_t w = 0; w < v; ++w) out = s.d_site.embedded(total, static_cast<int>(w) * q) * out;
  return out;
}

inline std::vector<PauliString> link_strings(const DiamondTorus& t, const SiteOperators& s, int total) {
  std::vector<PauliString> out;
  out.reserve(t.edges().size());
  for (const auto& e : t.edges()) {
    const auto cv = global_majorana(s, e.from, e.label(), total);
    const auto cw = global_majorana(s, e.to, e.label(), total);
    out.push_back(strings_embedded(s) ? (cv * cw).times_i(1) : cv * cw);
  }
  return out;
}

inline SparseC weighted_sum(const std::vector<SpinSystem::Term>& terms, int total_qubits) {
  const std::uint64_t dim = std::uint64_t{1} << total_qubits;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(terms.size() * dim);
  for (const auto& term : terms) {
    if (term.weight == 0.0) continue;
    for (std::uint64_t c = 0; c < dim; ++c) {
      const auto [r, v] = term.op.column(c);
      trips.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), term.weight * v);
    }
  }
  SparseC m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(cplx{0.0, 0.0});
  return m;
}

}  // namespace detail

/// Link operators u_{v,v'}, v the sublattice-1 endpoint, in torus edge
/// order (see SpinSystem for the embedding).
inline std::vector<SparseC> link_operators(const DiamondTorus& t, std::uint64_t max_dim = kDefaultMaxSpinDim) {
  const int total = detail::check_dimension(t, max_dim);
  const auto site = detail::site_operators(t.dimension());
  std::vector<SparseC> out;
  for (const auto& s : detail::link_strings(t, site, total)) out.push_back(s.sparse());
  return out;
}

/// H = - sum_e J_{l(e)} sigma_v^{l(e)} sigma_{v'}^{l(e)} over torus edges.
inline SpinSystem build_spin_hamiltonian(const DiamondTorus& t, const Couplings& j,
                                         std::uint64_t max_dim = kDefaultMaxSpinDim) {
  const int d = t.dimension();
  require_couplings(j, d);
  SpinSystem sys;
  sys.d = d;
  sys.total_qubits = detail::check_dimension(t, max_dim);
  const auto site = detail::site_operators(d);
  sys.site_qubits = site.rep.qubits;
  const int q = sys.site_qubits;
  const int total = sys.total_qubits;

  for (const auto& e : t.edges()) {
    const auto& sigma = site.sigma[static_cast<std::size_t>(e.direction)];
    const auto op = sigma.embedded(total, static_cast<int>(e.from) * q) * sigma.embedded(total, static_cast<int>(e.to) * q);
    sys.terms.push_back({op, -j.by_label(e.label())});
  }
  sys.u_strings = detail::link_strings(t, site, total);
  sys.d_tilde_string = PauliString::identity(total);
  for (std::size_t v = 0; v < t.vertices().size(); ++v)
    sys.d_tilde_string = sys.d_tilde_string * site.d_site.embedded(total, static_cast<int>(v) * q);

  sys.H = detail::weighted_sum(sys.terms, total);
  for (const auto& u : sys.u_strings) sys.u_ops.push_back(u.sparse());
  sys.D_tilde = sys.d_tilde_string.sparse();
  return sys;
}

/// Maximum Frobenius-norm residuals of the operator identities.
struct IdentityReport {
  double h_hermitian = 0.0;     // |H - H^dag|
  double h_d_commutator = 0.0;  // |[H, D~]|
  double h_u_commutator = 0.0;  // max_e |[H, u_e]|
  double u_u_commutator = 0.0;  // max_{e != e'} |[u_e, u_e']|
  double d_square = 0.0;        // |D~^2 - I|
  double u_square = 0.0;        // max_e |u_e^2 - I|
  double u_hermitian = 0.0;     // max_e |u_e - u_e^dag|
  double u_trace = 0.0;         // max_e |tr u_e| (0 <=> equal +-1 multiplicities)
  double projector_block = 0.0; // |P_+ H P_-|, P_+- = (I +- D~)/2

  double max_residual() const {
    return std::max({h_hermitian, h_d_commutator, h_u_commutator, u_u_commutator, d_square, u_square,
                     u_hermitian, u_trace, projector_block});
  }
};

inline IdentityReport verify_operator_identities(const SpinSystem& sys) {
  IdentityReport r;
  const auto n = static_cast<Eigen::Index>(sys.total_dim());
  SparseC id(n, n);
  id.setIdentity();

  auto comm = [](const SparseC& a, const SparseC& b) -> double {
    SparseC ab = a * b;
    SparseC ba = b * a;
    return (ab - ba).norm();
  };

  r.h_hermitian = (sys.H - SparseC(sys.H.adjoint())).norm();
  r.h_d_commutator = comm(sys.H, sys.D_tilde);
  r.d_square = (SparseC(sys.D_tilde * sys.D_tilde) - id).norm();
  for (std::size_t e = 0; e < sys.u_ops.size(); ++e) {
    const auto& u = sys.u_ops[e];
    r.h_u_commutator = std::max(r.h_u_commutator, comm(sys.H, u));
    r.u_square = std::max(r.u_square, (SparseC(u * u) - id).norm());
    r.u_hermitian = std::max(r.u_hermitian, (u - SparseC(u.adjoint())).norm());
    cplx tr{0.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) tr += u.coeff(k, k);
    r.u_trace = std::max(r.u_trace, std::abs(tr));
    for (std::size_t f = e + 1; f < sys.u_ops.size(); ++f)
      r.u_u_commutator = std::max(r.u_u_commutator, comm(u, sys.u_ops[f]));
  }
  const SparseC p_plus = 0.5 * (id + sys.D_tilde);
  const SparseC p_minus = 0.5 * (id - sys.D_tilde);
  r.projector_block = SparseC(p_plus * sys.H * p_minus).norm();
  return r;
}

/// Exact Pauli-algebra counterpart of the commutation identities: every term
/// of H commutes with D~ and every u_e, and the u_e commute pairwise.
inline bool symbolic_identities_hold(const SpinSystem& sys) {
  for (const auto& term : sys.terms) {
    if (!term.op.commutes_with(sys.d_tilde_string)) return false;
    for (const auto& u : sys.u_strings)
      if (!u.commutes_with(term.op)) return false;
  }
  for (std::size_t a = 0; a < sys.u_strings.size(); ++a) {
    if (!sys.u_strings[a].is_hermitian() || !sys.u_strings[a].commutes_with(sys.d_tilde_string)) return false;
    for (std::size_t b = a + 1; b < sys.u_strings.size(); ++b)
      if (!sys.u_strings[a].commutes_with(sys.u_strings[b])) return false;
  }
  return sys.d_tilde_string.is_hermitian();
}

/// Dimension of the joint (+1)-eigenspace of D~ and all u_e.
inline std::uint64_t flux_free_sector_dimension(const SpinSystem& sys) {
  std::vector<PauliString> gens = sys.u_strings;
  gens.push_back(sys.d_tilde_string);
  return joint_plus_dimension(gens);
}

}  // namespace diamond
