#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gap.hpp"
#include "lattice.hpp"
#include "spectrum.hpp"
#include "spinham.hpp"
#include "tightbinding.hpp"

namespace diamond::cli {

enum class Command { bands, gap, gapmap, verify, lattice, verify_algebra };
enum class Format { csv, json };

/// Exit codes: success, contract violation, usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::bands;
  int d = 2;
  int N = 4;
  int grid = 64;
  std::vector<double> J;
  std::optional<std::vector<cplx>> t;
  Format format = Format::csv;
  std::uint64_t seed = 0;
  int draws = 10;
  int resolution = 20;
  bool inject_fault = false;  // verify: flip one bond of A (negative control)
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parse "1,2,-0.5" into reals.
inline std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("cannot parse number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

/// Parse "1,0.5:0.25" into complex numbers; "re:im" or plain "re".
inline std::vector<cplx> parse_complex(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(parse_reals(tok).at(0), 0.0);
    } else {
      const auto re = parse_reals(tok.substr(0, colon));
      const auto im = parse_reals(tok.substr(colon + 1));
      if (re.size() != 1 || im.size() != 1) throw UsageError("cannot parse hopping '" + tok + "'");
      out.emplace_back(re[0], im[0]);
    }
  }
  return out;
}

inline void validate(RunConfig& cfg) {
  if (cfg.d < 2) throw UsageError("--d must be >= 2");
  const auto need = static_cast<std::size_t>(cfg.d) + 1;
  const bool uses_j = cfg.command == Command::bands || cfg.command == Command::gap || cfg.command == Command::verify_algebra;
  if (uses_j) {
    if (cfg.J.empty() && cfg.command == Command::verify_algebra) cfg.J.assign(need, 1.0);
    if (cfg.J.size() != need)
      throw UsageError("--J needs " + std::to_string(need) + " comma-separated couplings, got " + std::to_string(cfg.J.size()));
    for (double v : cfg.J)
      if (!std::isfinite(v)) throw UsageError("--J entries must be finite");
  }
  if (cfg.t && cfg.t->size() != need)
    throw UsageError("--t needs " + std::to_string(need) + " hoppings, got " + std::to_string(cfg.t->size()));
  if ((cfg.command == Command::bands || cfg.command == Command::gap) && cfg.grid < 2) throw UsageError("--grid must be >= 2");
  if (cfg.command == Command::lattice || cfg.command == Command::verify_algebra) {
    if (cfg.N < 1) throw UsageError("--N must be >= 1");
  }
  if (cfg.command == Command::verify) {
    if (cfg.N < 2) throw UsageError("verify needs --N >= 2");
    if (cfg.draws < 1) throw UsageError("--draws must be >= 1");
  }
  if (cfg.command == Command::gapmap && cfg.resolution < 1) throw UsageError("--resolution must be >= 1");
}

inline nlohmann::json report_to_json(const IdentityReport& r) {
  return {{"h_hermitian", r.h_hermitian},       {"h_d_commutator", r.h_d_commutator},
          {"h_u_commutator", r.h_u_commutator}, {"u_u_commutator", r.u_u_commutator},
          {"d_square", r.d_square},             {"u_square", r.u_square},
          {"u_hermitian", r.u_hermitian},       {"u_trace", r.u_trace},
          {"projector_block", r.projector_block}, {"max_residual", r.max_residual()}};
}

inline constexpr double kOperatorTolerance = 1e-12;

inline int cmd_bands(const RunConfig& cfg, std::ostream& out) {
  const Couplings j(cfg.J);
  const std::optional<Hoppings> hop = cfg.t ? std::optional<Hoppings>(Hoppings(*cfg.t)) : std::nullopt;
  const auto grid = bz_grid(cfg.d, cfg.grid);
  if (cfg.format == Format::json) {
    auto rows = nlohmann::json::array();
    for (const auto& m : grid) {
      const auto r = dispersion(j, m);
      nlohmann::json row{{"phi", m.phases()}, {"xi_plus", r.xi_plus}, {"xi_minus", r.xi_minus}};
      if (hop) {
        const auto e = tb_energy(*hop, m);
        row["E_plus"] = e.e_plus;
        row["E_minus"] = e.e_minus;
      }
      rows.push_back(std::move(row));
    }
    out << rows.dump() << '\n';
    return kExitOk;
  }
  out << std::setprecision(17);
  for (int i = 1; i <= cfg.d; ++i) out << "phi_" << i << ',';
  out << "xi_plus,xi_minus" << (hop ? ",E_plus,E_minus" : "") << '\n';
  for (const auto& m : grid) {
    const auto r = dispersion(j, m);
    for (double p : m.phases()) out << p << ',';
    out << r.xi_plus << ',' << r.xi_minus;
    if (hop) {
      const auto e = tb_energy(*hop, m);
      out << ',' << e.e_plus << ',' << e.e_minus;
    }
    out << '\n';
  }
  return kExitOk;
}

inline int cmd_gap(const RunConfig& cfg, std::ostream& out) {
  const Couplings j(cfg.J);
  const auto r = gap_report(j, cfg.grid);
  nlohmann::json doc{{"has_zero", r.has_zero}, {"margin", r.margin}, {"min_numeric", r.min_numeric}};
  doc["zero_phi"] = r.zero_momentum ? nlohmann::json(r.zero_momentum->phases()) : nlohmann::json(nullptr);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_gapmap(const RunConfig& cfg, std::ostream& out) {
  write_gapmap_csv(out, cfg.d, cfg.resolution);
  return kExitOk;
}

inline int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
  out << torus_to_json(build_torus(cfg.d, cfg.N)).dump(2) << '\n';
  return kExitOk;
}

/// Operator identities on the given torus; the N=1 torus is used when the
/// requested one exceeds `max_dim`.
inline nlohmann::json operator_check(int d, int n, const Couplings& j, std::uint64_t max_dim, bool& pass) {
  auto torus = build_torus(d, n);
  const auto qubits = static_cast<std::uint64_t>(d / 2 + 1) * torus.vertices().size();
  if (qubits > 62 || (std::uint64_t{1} << qubits) > max_dim) torus = build_torus(d, 1);
  const auto sys = build_spin_hamiltonian(torus, j, max_dim);
  const auto rep = verify_operator_identities(sys);
  const bool symbolic = symbolic_identities_hold(sys);
  pass = rep.max_residual() < kOperatorTolerance && symbolic;
  auto doc = report_to_json(rep);
  doc["N"] = torus.period();
  doc["total_dim"] = sys.total_dim();
  doc["symbolic"] = symbolic;
  doc["flux_free_sector_dim"] = flux_free_sector_dimension(sys);
  doc["pass"] = pass;
  return doc;
}

inline int cmd_verify_algebra(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool pass = false;
  auto doc = operator_check(cfg.d, cfg.N, Couplings(cfg.J), kDefaultMaxSpinDim, pass);
  doc["d"] = cfg.d;
  doc["J"] = cfg.J;
  out << doc.dump(2) << '\n';
  if (!pass) err << "operator identities violated for d=" << cfg.d << " N=" << cfg.N << '\n';
  return pass ? kExitOk : kExitContract;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto torus = build_torus(cfg.d, cfg.N);
  nlohmann::json doc{{"d", cfg.d}, {"N", cfg.N}, {"seed", cfg.seed}, {"draws", cfg.draws}, {"tolerance", kBlochTolerance}};
  auto runs = nlohmann::json::array();
  bool all_pass = true;
  std::function<void(QuadraticForm&)> tamper;
  if (cfg.inject_fault)
    tamper = [&torus](QuadraticForm& q) {
      const auto& e = torus.edges().front();
      const auto v = static_cast<Eigen::Index>(e.from);
      const auto w = static_cast<Eigen::Index>(e.to);
      q.A(v, w) = -q.A(v, w);
      q.A(w, v) = -q.A(w, v);
    };
  for (int k = 0; k < cfg.draws; ++k) {
    const auto j = draw_couplings(cfg.d, cfg.seed, static_cast<std::uint64_t>(k));
    const double dev = verify_bloch_equivalence(torus, j, tamper);
    const bool ok = dev < kBlochTolerance;
    all_pass = all_pass && ok;
    runs.push_back({{"draw", k}, {"J", j.values}, {"deviation", dev}, {"pass", ok}});
    if (!ok) {
      err << std::setprecision(17) << "bloch equivalence failed: d=" << cfg.d << " N=" << cfg.N << " seed=" << cfg.seed
          << " draw=" << k << " J=";
      for (std::size_t i = 0; i < j.size(); ++i) err << (i ? "," : "") << j.values[i];
      err << " deviation=" << dev << '\n';
    }
  }
  doc["bloch"] = std::move(runs);

  // Operator identities; falls back to the N=1 torus above 2^12 states.
  bool ops_pass = false;
  doc["operator_identities"] =
      operator_check(cfg.d, cfg.N, draw_couplings(cfg.d, cfg.seed, static_cast<std::uint64_t>(cfg.draws)),
                     std::uint64_t{1} << 12, ops_pass);
  if (!ops_pass) err << "operator identities violated: d=" << cfg.d << " seed=" << cfg.seed << '\n';
  all_pass = all_pass && ops_pass;
  doc["pass"] = all_pass;
  out << doc.dump(2) << '\n';
  return all_pass ? kExitOk : kExitContract;
}

/// Validate and dispatch. Usage problems become exit code 2 with a one-line
/// diagnostic on `err`.
inline int run(RunConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::bands: return cmd_bands(cfg, out);
      case Command::gap: return cmd_gap(cfg, out);
      case Command::gapmap: return cmd_gapmap(cfg, out);
      case Command::lattice: return cmd_lattice(cfg, out);
      case Command::verify: return cmd_verify(cfg, out, err);
      case Command::verify_algebra: return cmd_verify_algebra(cfg, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace diamond::cli
