#include "curved_mie/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "curved_mie/cli/parallel.hpp"
#include "curved_mie/oracle.hpp"
#include "curved_mie/wavefunction.hpp"

namespace curved_mie::cli {

using nlohmann::json;

namespace {

SolvabilityMode single_mode(const RunConfig& cfg, const char* command) {
  if (cfg.modes.size() != 1)
    throw ConfigError(std::string(command) + " needs a single mode (paper, rederived or direct)");
  return cfg.modes.front();
}

json maybe(double x, bool present) { return present ? json(x) : json(nullptr); }

double rel_err(double abs_err, double reference) {
  return reference != 0.0 ? abs_err / std::abs(reference) : abs_err;
}

}  // namespace

Table cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& opt) {
  if (opt.n_max < 1) throw ConfigError("n_max must be >= 1");
  if (opt.m < 0) throw ConfigError("m must be >= 0");
  Table t;
  t.header = {"n", "j", "mode", "E_analytic", "E_oracle", "abs_err", "rel_err"};

  std::vector<double> oracle;
  if (opt.with_oracle) {
    if (4 * opt.n_max >= cfg.N) throw ConfigError("n_max too large for grid.N");
    oracle = solve_curved(cfg.params, opt.m, cfg.N, opt.n_max, cfg.eig_tol).eigenvalues;
  }
  for (SolvabilityMode mode : cfg.modes) {
    for (int n = 1; n <= opt.n_max; ++n) {
      const Level lv = level(n, opt.m, cfg.params, mode);
      const bool has = opt.with_oracle;
      const double eo = has ? oracle[n - 1] : 0.0;
      const double err = std::abs(lv.energy - eo);
      t.add_row({n, lv.j, std::string(to_string(mode)), lv.energy, maybe(eo, has), maybe(err, has),
                 maybe(rel_err(err, eo), has)});
    }
  }
  return t;
}

std::string molecule_names(const RunConfig& cfg) {
  std::string names;
  for (const auto& [name, m] : cfg.molecules) names += (names.empty() ? "" : ", ") + name;
  return names.empty() ? "(none)" : names;
}

Table cmd_potential(const RunConfig& cfg, const PotentialOptions& opt) {
  if (opt.samples < 4) throw ConfigError("samples must be >= 4");
  PhysicalParams p = cfg.params;
  if (!opt.molecule.empty()) {
    const auto it = cfg.molecules.find(opt.molecule);
    if (it == cfg.molecules.end())
      throw ConfigError("unknown molecule '" + opt.molecule + "'; known: " + molecule_names(cfg));
    p = it->second.params(cfg.params);
  }
  Table t;
  t.header = {"x", "V"};
  if (opt.space == Space::flat) {
    if (!(opt.r_max > 0.0)) throw ConfigError("r_max must be > 0");
    for (int i = 1; i <= opt.samples; ++i) {
      const double r = opt.r_max * i / opt.samples;
      t.add_row({r, v_flat(r, p)});
    }
  } else {
    const Grid g = Grid::sphere(opt.samples);
    for (Eigen::Index i = 0; i < g.interior_size(); ++i)
      t.add_row({g.nodes(i), v_curved(g.nodes(i), p)});
  }
  return t;
}

Table cmd_wavefunction(const RunConfig& cfg, const WavefunctionOptions& opt) {
  if (opt.n < 1) throw ConfigError("n must be >= 1");
  if (opt.m < 0) throw ConfigError("m must be >= 0");
  const SolvabilityMode mode = single_mode(cfg, "wavefunction");
  const Level lv = level(opt.n, opt.m, cfg.params, mode);
  const Grid g = Grid::sphere(cfg.N);
  const WaveSample w = normalize(eval_eigenfunction(lv, g));

  Eigen::ArrayXd numeric;
  if (opt.oracle) {
    if (4 * opt.n >= cfg.N) throw ConfigError("n too large for grid.N");
    const TridiagonalOperator op = assemble_curved(cfg.params, opt.m, cfg.N);
    const EigenResult res = lowest_k(op, opt.n, cfg.eig_tol);
    numeric = eigenvector(op, res.eigenvalues[opt.n - 1]) / g.nodes.sin();
    numeric /= std::sqrt(simpson(numeric.square() * g.nodes.sin().square(), g.h));
    const double overlap = (w.values.real() * numeric * g.nodes.sin().square()).sum();
    if (overlap < 0.0) numeric = -numeric;
  }

  Table t;
  t.header = {"psi", "re", "im", "abs2"};
  if (opt.oracle) {
    t.header.push_back("oracle");
    t.header.push_back("abs_diff");
  }
  for (Eigen::Index i = 0; i < g.interior_size(); ++i) {
    const std::complex<double> v = w.values(i);
    std::vector<json> row{g.nodes(i), v.real(), v.imag(), std::norm(v)};
    if (opt.oracle) {
      row.emplace_back(numeric(i));
      row.emplace_back(std::abs(v - numeric(i)));
    }
    t.add_row(std::move(row));
  }
  return t;
}

namespace {

constexpr const char* kSweepKeys[] = {"hbar", "mu", "R", "a", "V0", "m"};

struct SweepPoint {
  PhysicalParams p;
  int m = 0;
};

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

std::pair<std::string, std::vector<double>> parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("range '" + text + "' must look like NAME=v1,v2");
  const std::string name = text.substr(0, eq);
  if (std::find(std::begin(kSweepKeys), std::end(kSweepKeys), name) == std::end(kSweepKeys))
    throw ConfigError("unknown sweep parameter '" + name + "' (expected hbar, mu, R, a, V0 or m)");
  std::vector<double> values;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw ConfigError("bad value '" + item + "' in range " + name);
    if (name == "m" && (v < 0.0 || v != std::floor(v)))
      throw ConfigError("m values must be nonnegative integers");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("range " + name + " is empty");
  return {name, values};
}

Table cmd_sweep(const RunConfig& cfg, const SweepOptions& opt) {
  if (opt.n_max < 1) throw ConfigError("n_max must be >= 1");
  if (opt.with_oracle && 4 * opt.n_max >= cfg.N) throw ConfigError("n_max too large for grid.N");

  // cartesian product, last key fastest
  std::vector<std::vector<double>> axes;
  for (const char* key : kSweepKeys) {
    std::vector<double> vals;
    if (auto it = opt.ranges.find(key); it != opt.ranges.end()) {
      vals = it->second;
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    } else {
      const std::string k = key;
      vals = {k == "hbar" ? cfg.params.hbar
              : k == "mu" ? cfg.params.mu
              : k == "R"  ? cfg.params.R
              : k == "a"  ? cfg.params.a
              : k == "V0" ? cfg.params.V0
                          : 0.0};
    }
    axes.push_back(std::move(vals));
  }
  for (const auto& [key, vals] : opt.ranges)
    if (std::find(std::begin(kSweepKeys), std::end(kSweepKeys), key) == std::end(kSweepKeys))
      throw ConfigError("unknown sweep parameter '" + key + "'");

  std::vector<SweepPoint> points;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (bool more = true; more;) {
    SweepPoint pt;
    pt.p = {axes[0][idx[0]], axes[1][idx[1]], axes[2][idx[2]], axes[3][idx[3]], axes[4][idx[4]]};
    pt.m = int(axes[5][idx[5]]);
    points.push_back(pt);
    more = false;
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < axes[k].size()) {
        more = true;
        break;
      }
      idx[k] = 0;
    }
  }

  Table t;
  t.header = {"hbar",       "mu",         "R",          "a",           "V0",
              "m",          "mode",       "n",          "j",           "alpha",
              "beta",       "jacobi_a_re", "jacobi_a_im", "jacobi_b_re", "jacobi_b_im",
              "E_analytic", "E_oracle",   "E_flat_limit", "flat_gap",  "error"};

  std::vector<std::vector<std::vector<json>>> blocks(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        const SweepPoint& pt = points[i];
        std::vector<double> oracle;
        std::string oracle_error;
        if (opt.with_oracle) {
          try {
            pt.p.validate();
            oracle = solve_curved(pt.p, pt.m, cfg.N, opt.n_max, cfg.eig_tol).eigenvalues;
          } catch (const std::exception& e) {
            oracle_error = describe(e);
          }
        }
        for (SolvabilityMode mode : cfg.modes) {
          for (int n = 1; n <= opt.n_max; ++n) {
            std::vector<json> row{pt.p.hbar, pt.p.mu, pt.p.R, pt.p.a, pt.p.V0, pt.m,
                                  std::string(to_string(mode)), n};
            try {
              const Level lv = level(n, pt.m, pt.p, mode);
              const FlatLimit fl = flat_limit_energy(n, lv.j, pt.p);
              const bool has = opt.with_oracle && oracle_error.empty();
              row.insert(row.end(), {lv.j, lv.alpha, lv.beta, lv.jacobi.a.real(),
                                     lv.jacobi.a.imag(), lv.jacobi.b.real(), lv.jacobi.b.imag(),
                                     lv.energy, maybe(has ? oracle[n - 1] : 0.0, has),
                                     fl.curvature_limit, std::abs(lv.energy - fl.curvature_limit),
                                     oracle_error.empty() ? json(nullptr) : json(oracle_error)});
            } catch (const std::exception& e) {
              row.resize(t.header.size() - 1, nullptr);
              row.emplace_back(describe(e));
            }
            blocks[i].push_back(std::move(row));
          }
        }
      },
      opt.serial);
  for (auto& block : blocks)
    for (auto& row : block) t.add_row(std::move(row));
  return t;
}

namespace {

// Smooth test function vanishing to high order at both poles.
Eigen::ArrayXcd bump(const Grid& g) {
  const Eigen::ArrayXd s = g.nodes.sin();
  const Eigen::ArrayXd c = g.nodes.cos();
  const Eigen::ArrayXcd shape = Complex(1.0, 0.0) + Complex(0.0, 0.5) * c.cast<Complex>();
  return (s.pow(8) * c.exp()).cast<Complex>() * shape;
}

json order_of(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return nullptr;
  return std::log2(coarse / fine);
}

}  // namespace

Table cmd_algebra(const RunConfig& cfg, const AlgebraOptions& opt) {
  if (opt.n < 1) throw ConfigError("n must be >= 1");
  if (opt.m < 0) throw ConfigError("m must be >= 0");
  const SolvabilityMode mode = single_mode(cfg, "algebra");
  const PhysicalParams& p = cfg.params;
  const Level lv = level(opt.n, opt.m, p, mode);
  const DerivedConstants dc = derive_constants(p, opt.m);
  const bool has_o2 = dc.A != 0.0;
  const FactorizationParams fp1 = factorization_for_level(lv, p, Branch::mode1, opt.signs);
  const FactorizationParams fp2 =
      has_o2 ? factorization_for_level(lv, p, Branch::mode2, opt.signs) : fp1;

  Table t;
  t.header = {"identity", "grid_N", "residual", "convergence_order"};

  const MatchingResiduals mr = matching_residuals(fp2);
  t.add_row({"matching_product", nullptr, mr.product, nullptr});
  t.add_row({"matching_sum_squared", nullptr, mr.sum_squared, nullptr});
  t.add_row({"matching_sum_unsquared", nullptr, mr.sum_unsquared, nullptr});
  t.add_row({"epsilon_equated", nullptr, mr.epsilon_equated, nullptr});

  using Measure = std::function<double(const Grid&)>;
  std::vector<std::pair<std::string, Measure>> checks;
  auto realization = [&](const Grid& g) { return eigen_realization(lv, p, g); };
  checks.emplace_back("factorization_raise_lower", [&](const Grid& g) {
    return factorization_residual(realization(g).values, g, fp2, FactorizationIdentity::raise_lower);
  });
  checks.emplace_back("factorization_lower_raise", [&](const Grid& g) {
    return factorization_residual(realization(g).values, g, fp2, FactorizationIdentity::lower_raise);
  });
  checks.emplace_back("casimir_O1", [&](const Grid& g) {
    return casimir_eigencheck(realization(g), g, fp1, Generator::first, lv.j);
  });
  if (has_o2) {
    checks.emplace_back("casimir_O2", [&](const Grid& g) {
      return casimir_eigencheck(realization(g), g, fp2, Generator::second, lv.j);
    });
    checks.emplace_back("casimir_O1_vs_O2", [&](const Grid& g) {
      const IndexedFunction phi = realization(g);
      const IndexedFunction c1 = casimir_apply(phi, g, fp1, Generator::first);
      const IndexedFunction c2 = casimir_apply(phi, g, fp2, Generator::second);
      return l2_norm(c1.values - c2.values, g) / l2_norm(phi.values, g);
    });
  }
  for (CommutatorPair pair :
       {CommutatorPair::X1_O1_plus, CommutatorPair::X1_O1_minus, CommutatorPair::O1_plus_O1_minus,
        CommutatorPair::X2_O1_plus, CommutatorPair::X2_O1_minus, CommutatorPair::X2_O2_plus,
        CommutatorPair::X2_O2_minus, CommutatorPair::O2_plus_O2_minus}) {
    const bool uses_o2 = pair == CommutatorPair::X2_O2_plus || pair == CommutatorPair::X2_O2_minus ||
                         pair == CommutatorPair::O2_plus_O2_minus;
    if (uses_o2 && !has_o2) continue;
    const FactorizationParams& fp = uses_o2 ? fp2 : fp1;
    checks.emplace_back(std::string("commutator ") + to_string(pair), [&, pair](const Grid& g) {
      return commutator_residual(pair, realization(g), g, fp);
    });
  }
  checks.emplace_back("commutator [O1+,O1-]=-2X1 (bump)", [&](const Grid& g) {
    IndexedFunction phi = realization(g);
    phi.values = bump(g);
    return commutator_residual(CommutatorPair::O1_plus_O1_minus, phi, g, fp1);
  });
  checks.emplace_back("ladder_adjoint (bump)", [&](const Grid& g) {
    const Eigen::ArrayXcd f = bump(g);
    const Eigen::ArrayXcd h = bump(g) * g.nodes.cos().cast<Complex>();
    return adjoint_residual(fp2, g, f, h);
  });

  const Grid coarse = Grid::sphere(cfg.N / 2);
  const Grid fine = Grid::sphere(cfg.N);
  for (const auto& [name, measure] : checks) {
    const double rc = measure(coarse);
    const double rf = measure(fine);
    const bool index_only = name.find("[X") != std::string::npos;
    t.add_row({name, cfg.N, rf, index_only ? json(nullptr) : order_of(rc, rf)});
  }
  return t;
}

}  // namespace curved_mie::cli
