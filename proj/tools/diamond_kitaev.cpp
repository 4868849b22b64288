#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "diamond/cli.hpp"

namespace {

using diamond::cli::Command;
using diamond::cli::Format;
using diamond::cli::RunConfig;

struct RawFlags {
  std::string J;
  std::string t;
  std::string out;
  std::string format;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kitaev model on d-dimensional diamond crystals"};
  app.require_subcommand(1);

  RunConfig cfg;
  RawFlags raw;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "lattice dimension (>= 2)");
    sub->add_option("--out", raw.out, "output file (default stdout)");
    sub->add_option("--format", raw.format, "csv or json");
  };
  auto add_couplings = [&](CLI::App* sub) {
    sub->add_option("--J", raw.J, "couplings J_1..J_{d+1}, comma separated; direction i uses J_{i+1}");
  };

  auto* bands = app.add_subcommand("bands", "dispersion over the phase grid (CSV)");
  add_common(bands);
  add_couplings(bands);
  bands->add_option("--grid", cfg.grid, "grid points per axis");
  bands->add_option("--t", raw.t, "tight-binding hoppings t_1..t_{d+1}; each re or re:im");

  auto* gap = app.add_subcommand("gap", "zero existence, explicit zero and numeric gap (JSON)");
  add_common(gap);
  add_couplings(gap);
  gap->add_option("--grid", cfg.grid, "grid points per axis for the numeric minimum")->default_val(48);

  auto* gapmap = app.add_subcommand("gapmap", "gapped/gapless classification over the coupling simplex (CSV)");
  add_common(gapmap);
  gapmap->add_option("--resolution", cfg.resolution, "barycentric denominator");

  auto* lattice = app.add_subcommand("lattice", "export a diamond torus (JSON)");
  add_common(lattice);
  lattice->add_option("--N", cfg.N, "torus period");

  auto* verify = app.add_subcommand("verify", "torus spectrum vs Bloch bands, plus operator identities");
  add_common(verify);
  verify->add_option("--N", cfg.N, "torus period (>= 2)");
  verify->add_option("--draws", cfg.draws, "random coupling draws");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* algebra = app.add_subcommand("verify-algebra", "spin-model operator identities (JSON)");
  add_common(algebra);
  add_couplings(algebra);
  algebra->add_option("--N", cfg.N, "torus period")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return diamond::cli::kExitUsage;
  }

  if (bands->parsed()) {
    cfg.command = Command::bands;
  } else if (gap->parsed()) {
    cfg.command = Command::gap;
  } else if (gapmap->parsed()) {
    cfg.command = Command::gapmap;
  } else if (lattice->parsed()) {
    cfg.command = Command::lattice;
  } else if (verify->parsed()) {
    cfg.command = Command::verify;
  } else {
    cfg.command = Command::verify_algebra;
  }

  try {
    if (!raw.J.empty()) cfg.J = diamond::cli::parse_reals(raw.J);
    if (!raw.t.empty()) cfg.t = diamond::cli::parse_complex(raw.t);
    const bool json_default = cfg.command != Command::bands && cfg.command != Command::gapmap;
    if (raw.format.empty()) {
      cfg.format = json_default ? Format::json : Format::csv;
    } else if (raw.format == "csv") {
      cfg.format = Format::csv;
    } else if (raw.format == "json") {
      cfg.format = Format::json;
    } else {
      throw diamond::cli::UsageError("--format must be csv or json");
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return diamond::cli::kExitUsage;
  }

  if (raw.out.empty()) return diamond::cli::run(cfg, std::cout, std::cerr);
  std::ofstream file(raw.out);
  if (!file) {
    std::cerr << "error: cannot open " << raw.out << '\n';
    return diamond::cli::kExitUsage;
  }
  return diamond::cli::run(cfg, file, std::cerr);
}
