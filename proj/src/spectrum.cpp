#include "curved_mie/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curved_mie {

std::string_view to_string(SolvabilityMode mode) {
  switch (mode) {
    case SolvabilityMode::paper_literal: return "paper_literal";
    case SolvabilityMode::rederived: return "rederived";
    case SolvabilityMode::direct: return "direct";
  }
  return "unknown";
}

SolvabilityMode parse_mode(std::string_view text) {
  if (text == "paper" || text == "paper_literal") return SolvabilityMode::paper_literal;
  if (text == "rederived") return SolvabilityMode::rederived;
  if (text == "direct") return SolvabilityMode::direct;
  throw ConfigError("unknown mode '" + std::string(text) +
                    "' (expected paper, rederived or direct)");
}

double compute_j(int m, const PhysicalParams& p, SolvabilityMode mode) {
  const DerivedConstants c = derive_constants(p, m);
  double disc = 0.0;
  switch (mode) {
    case SolvabilityMode::paper_literal:
      disc = double(m) * (m + 1) + p.coupling() + 7.0 / 4.0;
      break;
    case SolvabilityMode::rederived:
      disc = c.C2 + 2.0 + 0.25;
      break;
    case SolvabilityMode::direct:
      disc = c.C2 + 0.25;
      break;
  }
  if (disc < 0.0)
    throw ParameterError("no bound channel: negative discriminant " + std::to_string(disc) +
                         " for m = " + std::to_string(m));
  return -0.5 + std::sqrt(disc);
}

namespace {

double energy_constant(SolvabilityMode mode) {
  return mode == SolvabilityMode::direct ? 1.0 : 9.0 / 4.0;
}

}  // namespace

Level level(int n, int m, const PhysicalParams& p, SolvabilityMode mode) {
  if (n < 1) throw ParameterError("level index n must be >= 1");
  p.validate();
  const DerivedConstants c = derive_constants(p, m);
  Level lv;
  lv.n = n;
  lv.m = m;
  lv.mode = mode;
  lv.j = compute_j(m, p, mode);
  const double k = lv.kappa();
  if (k == 0.0) throw ParameterError("singular level: n + j = 0");
  lv.alpha = c.C3 / k;
  lv.beta = 1.0 - k;
  // continued parameters: alpha -> i alpha in (2 beta -+ alpha - 2) / 2
  using cd = std::complex<double>;
  lv.jacobi.a = (cd(2.0 * lv.beta - 2.0, -lv.alpha)) / 2.0;
  lv.jacobi.b = (cd(2.0 * lv.beta - 2.0, lv.alpha)) / 2.0;
  lv.energy = p.energy_scale() *
              (k * k - c.C3 * c.C3 / (4.0 * k * k) - p.coupling() - energy_constant(mode));
  return lv;
}

FlatLimit flat_limit_energy(int n, double j, const PhysicalParams& p) {
  const double k = n + j;
  if (!(k > 0.0)) throw DomainError("flat_limit_energy: n + j must be > 0");
  const double h2 = p.hbar * p.hbar;
  const double av = p.a * p.V0;
  FlatLimit f;
  f.paper_literal = -(p.mu * p.mu * av * av / (h2 * h2)) / (k * k);
  f.curvature_limit = -(p.mu * av * av / (2.0 * h2)) / (k * k);
  return f;
}

std::vector<Level> enumerate_levels(int n_max, int m, const PhysicalParams& p,
                                    SolvabilityMode mode) {
  if (n_max < 1) throw ParameterError("n_max must be >= 1");
  std::vector<Level> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) out.push_back(level(n, m, p, mode));
  std::stable_sort(out.begin(), out.end(),
                   [](const Level& x, const Level& y) { return x.energy < y.energy; });
  return out;
}

double quantization_residual(int n, double beta, double j) {
  const double d = n - 1;
  return std::abs(d * (d + 2.0 * beta - 1.0) - (beta * (1.0 - beta) + j * (j + 1.0)));
}

}  // namespace curved_mie
