// curved-mie: spectra, eigenfunctions, potential curves, algebra checks and
// the verification suite for the Mie (Kratzer) potential on S^3.

#include <iostream>

#include <CLI11.hpp>

#include "curved_mie/cli/commands.hpp"
#include "curved_mie/cli/config.hpp"
#include "curved_mie/cli/format.hpp"
#include "curved_mie/cli/verify.hpp"

using namespace curved_mie;
using namespace curved_mie::cli;

namespace {

struct Globals {
  std::string config;
  std::string mode;
  bool with_oracle = false;
  int grid_points = 0;
  std::string format;
  std::string out;
  bool serial = false;
};

RunConfig resolve(const Globals& g) {
  RunConfig cfg = g.config.empty() ? RunConfig{} : load_config(g.config);
  if (!g.mode.empty()) cfg.modes = parse_modes(g.mode);
  if (g.grid_points) cfg.N = g.grid_points;
  if (!g.format.empty()) cfg.format = parse_format(g.format);
  if (!g.out.empty()) cfg.out_path = g.out;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mie potential on the 3-sphere: spectrum, eigenfunctions, so(2,1) checks"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--mode", g.mode, "paper | rederived | direct | both | all")
      ->check(CLI::IsMember({"paper", "paper_literal", "rederived", "direct", "both", "all"}));
  app.add_flag("--with-oracle", g.with_oracle, "add finite-difference oracle columns");
  app.add_option("--grid-points", g.grid_points, "grid intervals N (even, >= 64)");
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_flag("--serial", g.serial, "run without worker threads");

  SpectrumOptions spec;
  auto* spectrum = app.add_subcommand("spectrum", "closed-form levels, optionally against the oracle");
  spectrum->add_option("--n-max", spec.n_max, "levels per mode")->capture_default_str();
  spectrum->add_option("--m", spec.m, "angular channel")->capture_default_str();

  PotentialOptions pot;
  std::string space = "curved";
  auto* potential = app.add_subcommand("potential", "potential curve V(r) or V(psi)");
  potential->add_option("--space", space, "flat | curved")
      ->check(CLI::IsMember({"flat", "curved"}))
      ->capture_default_str();
  potential->add_option("--molecule", pot.molecule, "molecule name from the config registry");
  potential->add_option("--samples", pot.samples, "sample count")->capture_default_str();
  potential->add_option("--r-max", pot.r_max, "flat range upper end")->capture_default_str();

  WavefunctionOptions wf;
  auto* wavefunction = app.add_subcommand("wavefunction", "normalized analytic eigenfunction");
  wavefunction->add_option("--n", wf.n, "radial index (ground state 1)")->capture_default_str();
  wavefunction->add_option("--m", wf.m, "angular channel")->capture_default_str();
  wavefunction->add_flag("--oracle", wf.oracle, "add the phase-aligned numerical eigenvector");

  std::string suites = "geometry,specfun,spectrum,wavefunction,algebra,limits";
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suites", suites, "comma-separated subset")->capture_default_str();

  SweepOptions sw;
  std::vector<std::string> ranges;
  bool no_oracle = false;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep, one row per point and level");
  sweep->add_option("--set", ranges, "NAME=v1,v2,... with NAME in hbar, mu, R, a, V0, m");
  sweep->add_option("--n-max", sw.n_max, "levels per point")->capture_default_str();
  sweep->add_flag("--no-oracle", no_oracle, "skip the oracle column");

  AlgebraOptions al;
  auto* algebra = app.add_subcommand("algebra", "factorization, commutator and Casimir residuals");
  algebra->add_option("--n", al.n, "radial index")->capture_default_str();
  algebra->add_option("--m", al.m, "angular channel")->capture_default_str();
  algebra->add_option("--sign-t", al.signs.t, "+1 or -1")->check(CLI::IsMember({-1, 1}));
  algebra->add_option("--sign-shift", al.signs.shift, "+1 or -1")->check(CLI::IsMember({-1, 1}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitCode::ok : ExitCode::usage_error;
  }

  try {
    const RunConfig cfg = resolve(g);
    if (*spectrum) {
      spec.with_oracle = g.with_oracle;
      emit(render(cmd_spectrum(cfg, spec), cfg.format), cfg.out_path);
    } else if (*potential) {
      pot.space = space == "flat" ? Space::flat : Space::curved;
      emit(render(cmd_potential(cfg, pot), cfg.format), cfg.out_path);
    } else if (*wavefunction) {
      wf.oracle = wf.oracle || g.with_oracle;
      emit(render(cmd_wavefunction(cfg, wf), cfg.format), cfg.out_path);
    } else if (*sweep) {
      for (const auto& r : ranges) {
        auto [name, values] = parse_range(r);
        sw.ranges[name] = values;
      }
      sw.with_oracle = !no_oracle;
      sw.serial = g.serial;
      emit(render(cmd_sweep(cfg, sw), cfg.format), cfg.out_path);
    } else if (*algebra) {
      RunConfig c = cfg;
      if (g.format.empty()) c.format = OutputFormat::json;
      emit(render(cmd_algebra(c, al), c.format), c.out_path);
    } else if (*verify) {
      const VerifyReport report = run_verify(cfg, parse_suites(suites), g.serial);
      std::cerr << summary(report);
      emit(to_json(report).dump(2) + "\n", cfg.out_path);
      return report.passed() ? ExitCode::ok : ExitCode::verify_failed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "curved-mie: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const ParameterError& e) {
    std::cerr << "curved-mie: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const DomainError& e) {
    std::cerr << "curved-mie: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const std::exception& e) {
    std::cerr << "curved-mie: numerical failure: " << e.what() << "\n";
    return ExitCode::numerical_failure;
  }
  return ExitCode::ok;
}
