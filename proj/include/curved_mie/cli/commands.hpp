#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curved_mie/algebra.hpp"
#include "curved_mie/cli/config.hpp"
#include "curved_mie/cli/format.hpp"

namespace curved_mie::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, usage_error = 2, numerical_failure = 3 };

struct SpectrumOptions {
  int n_max = 4;
  int m = 0;
  bool with_oracle = false;
};

/// n,j,mode,E_analytic,E_oracle,abs_err,rel_err ordered by (mode, n).
/// rel_err is abs_err / |E_oracle|, or abs_err when E_oracle is 0.
Table cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& opt);

enum class Space { flat, curved };

struct PotentialOptions {
  Space space = Space::curved;
  std::string molecule;  // empty: cfg.params
  int samples = 1000;
  double r_max = 10.0;  // flat only
};

/// x,V on r in (0, r_max] (flat) or the open psi grid on (0, pi) (curved).
Table cmd_potential(const RunConfig& cfg, const PotentialOptions& opt);

/// Known molecule names, comma separated, for error messages.
std::string molecule_names(const RunConfig& cfg);

struct WavefunctionOptions {
  int n = 1;
  int m = 0;
  bool oracle = false;
};

/// psi,re,im,abs2 on the open sphere grid of cfg.N intervals, normalized under
/// sin^2 psi dpsi. With oracle, adds `oracle` (phase-aligned numerical
/// eigenvector of the same level, same normalization) and its abs difference.
Table cmd_wavefunction(const RunConfig& cfg, const WavefunctionOptions& opt);

/// Parameter ranges keyed by hbar, mu, R, a, V0 or m.
using SweepRanges = std::map<std::string, std::vector<double>>;

/// "R=10,20,40" -> {"R", {10, 20, 40}}. ConfigError on unknown names or
/// non-finite values.
std::pair<std::string, std::vector<double>> parse_range(const std::string& text);

struct SweepOptions {
  SweepRanges ranges;
  int n_max = 1;
  bool with_oracle = true;
  bool serial = false;
};

/// One row per (parameter point, mode, n). Points are the cartesian product
/// in the order hbar, mu, R, a, V0, m with each range sorted ascending.
/// Failures fill the `error` column and the sweep continues.
Table cmd_sweep(const RunConfig& cfg, const SweepOptions& opt);

struct AlgebraOptions {
  int n = 1;
  int m = 0;
  BranchSigns signs;
};

/// Rows {identity, grid_N, residual, convergence_order}; the order compares
/// grid_N against grid_N / 2 and is null for grid-free checks.
Table cmd_algebra(const RunConfig& cfg, const AlgebraOptions& opt);

}  // namespace curved_mie::cli
