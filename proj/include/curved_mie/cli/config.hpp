#pragma once

// Run configuration: one JSON document, validated on load.
//
//   {
//     "description": "...",
//     "params": {"hbar": 1, "mu": 1, "R": 1, "a": 1, "V0": 1},
//     "units": {"length": 1, "energy": 1, "mass": 1},
//     "molecules": {"CH": {"epsilon_depth": ..., "a": ..., "reduced_mass": ..., "note": "..."}},
//     "mode": "direct",              (or a list, e.g. ["rederived", "direct"])
//     "grid": {"N": 8192, "k_states": 4},
//     "tolerances": {"eig_tol": 1e-12, "verify_tol": 1e-4},
//     "output": {"format": "csv", "path": ""}
//   }
//
// Every key is optional; unknown keys are a ConfigError naming the key.
// `units` holds multiplicative factors applied on load: length to a and R,
// energy to V0 and epsilon_depth, mass to mu and reduced_mass.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "curved_mie/model.hpp"
#include "curved_mie/spectrum.hpp"

namespace curved_mie::cli {

struct Molecule {
  double epsilon_depth = 0.0;
  double a = 0.0;
  double reduced_mass = 0.0;
  std::string note;

  /// Kratzer parameters with V0 = 2 epsilon (k = 1); hbar and R from base.
  PhysicalParams params(const PhysicalParams& base) const;
};

enum class OutputFormat { csv, json };

struct Units {
  double length = 1.0;
  double energy = 1.0;
  double mass = 1.0;
};

struct RunConfig {
  std::string description;
  Units units;  // already applied to params and molecules
  PhysicalParams params;
  std::map<std::string, Molecule> molecules;
  std::vector<SolvabilityMode> modes{SolvabilityMode::direct};
  int N = 8192;
  int k_states = 4;
  double eig_tol = 1e-12;
  double verify_tol = 1e-4;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty: stdout

  void validate() const;
};

/// "paper", "rederived", "direct", or "both"/"all" for every mode.
std::vector<SolvabilityMode> parse_modes(const std::string& text);

RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Reads and validates a config file. Missing or unreadable file is a
/// ConfigError naming the path.
RunConfig load_config(const std::filesystem::path& path);

OutputFormat parse_format(const std::string& text);

}  // namespace curved_mie::cli
