#include "curved_mie/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace curved_mie::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
  return x;
}

int integer(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string text(const json& obj, const char* key, const std::string& fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

PhysicalParams Molecule::params(const PhysicalParams& base) const {
  return PhysicalParams::from_depth(base.hbar, reduced_mass, base.R, a, epsilon_depth);
}

void RunConfig::validate() const {
  try {
    params.validate();
    for (const auto& [name, mol] : molecules) mol.params(params);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(params.V0) || params.V0 < 0.0)
    throw ConfigError("params.V0 must be finite and >= 0");
  if (modes.empty()) throw ConfigError("mode list is empty");
  if (N < 64 || N % 2 != 0) throw ConfigError("grid.N must be even and >= 64");
  if (k_states < 1 || 4 * k_states >= N) throw ConfigError("grid.k_states must be in [1, N/4)");
  if (!(eig_tol > 0.0)) throw ConfigError("tolerances.eig_tol must be > 0");
  if (!(verify_tol > 0.0)) throw ConfigError("tolerances.verify_tol must be > 0");
}

std::vector<SolvabilityMode> parse_modes(const std::string& text) {
  if (text == "both" || text == "all") return {std::begin(kAllModes), std::end(kAllModes)};
  return {parse_mode(text)};
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + text + "' (expected csv or json)");
}

RunConfig config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"description", "units", "params", "molecules", "mode", "grid", "tolerances",
                  "output"},
                 "config");
  RunConfig cfg;
  cfg.description = text(doc, "description", "", "config");

  if (doc.contains("units")) {
    const json& u = doc.at("units");
    reject_unknown(u, {"length", "energy", "mass"}, "units");
    cfg.units.length = number(u, "length", 1.0, "units");
    cfg.units.energy = number(u, "energy", 1.0, "units");
    cfg.units.mass = number(u, "mass", 1.0, "units");
    if (!(cfg.units.length > 0.0 && cfg.units.energy > 0.0 && cfg.units.mass > 0.0))
      throw ConfigError("units factors must be > 0");
  }

  if (doc.contains("params")) {
    const json& p = doc.at("params");
    reject_unknown(p, {"hbar", "mu", "R", "a", "V0"}, "params");
    cfg.params.hbar = number(p, "hbar", cfg.params.hbar, "params");
    cfg.params.mu = number(p, "mu", cfg.params.mu, "params");
    cfg.params.R = number(p, "R", cfg.params.R, "params");
    cfg.params.a = number(p, "a", cfg.params.a, "params");
    cfg.params.V0 = number(p, "V0", cfg.params.V0, "params");
  }
  cfg.params.R *= cfg.units.length;
  cfg.params.a *= cfg.units.length;
  cfg.params.V0 *= cfg.units.energy;
  cfg.params.mu *= cfg.units.mass;

  if (doc.contains("molecules")) {
    const json& mols = doc.at("molecules");
    if (!mols.is_object()) throw ConfigError("molecules must be a JSON object");
    for (auto it = mols.begin(); it != mols.end(); ++it) {
      const std::string where = "molecules." + it.key();
      reject_unknown(it.value(), {"epsilon_depth", "a", "reduced_mass", "note"}, where);
      Molecule m;
      m.epsilon_depth = number(it.value(), "epsilon_depth", 0.0, where);
      m.a = number(it.value(), "a", 0.0, where);
      m.reduced_mass = number(it.value(), "reduced_mass", 0.0, where) * cfg.units.mass;
      m.a *= cfg.units.length;
      m.epsilon_depth *= cfg.units.energy;
      m.note = text(it.value(), "note", "", where);
      cfg.molecules.emplace(it.key(), m);
    }
  }

  if (doc.contains("mode")) {
    const json& m = doc.at("mode");
    if (m.is_string()) {
      cfg.modes = parse_modes(m.get<std::string>());
    } else if (m.is_array()) {
      cfg.modes.clear();
      for (const json& item : m) {
        if (!item.is_string()) throw ConfigError("mode entries must be strings");
        const SolvabilityMode mode = parse_mode(item.get<std::string>());
        if (std::find(cfg.modes.begin(), cfg.modes.end(), mode) == cfg.modes.end())
          cfg.modes.push_back(mode);
      }
    } else {
      throw ConfigError("mode must be a string or an array of strings");
    }
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, {"N", "k_states"}, "grid");
    cfg.N = integer(g, "N", cfg.N, "grid");
    cfg.k_states = integer(g, "k_states", cfg.k_states, "grid");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, {"eig_tol", "verify_tol"}, "tolerances");
    cfg.eig_tol = number(t, "eig_tol", cfg.eig_tol, "tolerances");
    cfg.verify_tol = number(t, "verify_tol", cfg.verify_tol, "tolerances");
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, {"format", "path"}, "output");
    cfg.format = parse_format(text(o, "format", "csv", "output"));
    cfg.out_path = text(o, "path", "", "output");
  }

  cfg.validate();
  return cfg;
}

// Emits values in the converted units, so reloading the document gives the same config.
json config_to_json(const RunConfig& cfg) {
  json doc;
  doc["description"] = cfg.description;
  doc["params"] = {{"hbar", cfg.params.hbar}, {"mu", cfg.params.mu}, {"R", cfg.params.R},
                   {"a", cfg.params.a}, {"V0", cfg.params.V0}};
  doc["molecules"] = json::object();
  for (const auto& [name, m] : cfg.molecules)
    doc["molecules"][name] = {
        {"epsilon_depth", m.epsilon_depth}, {"a", m.a}, {"reduced_mass", m.reduced_mass},
        {"note", m.note}};
  if (cfg.modes.size() == 1) {
    doc["mode"] = std::string(to_string(cfg.modes[0]));
  } else {
    doc["mode"] = json::array();
    for (SolvabilityMode m : cfg.modes) doc["mode"].push_back(std::string(to_string(m)));
  }
  doc["grid"] = {{"N", cfg.N}, {"k_states", cfg.k_states}};
  doc["tolerances"] = {{"eig_tol", cfg.eig_tol}, {"verify_tol", cfg.verify_tol}};
  doc["output"] = {{"format", cfg.format == OutputFormat::csv ? "csv" : "json"},
                   {"path", cfg.out_path}};
  return doc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace curved_mie::cli
