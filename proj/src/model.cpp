#include "curved_mie/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace curved_mie {

PhysicalParams PhysicalParams::from_depth(double hbar, double mu, double R,
                                          double a, double epsilon, double k) {
  PhysicalParams p{hbar, mu, R, a, 2.0 * epsilon * k};
  p.validate();
  return p;
}

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
      throw ParameterError(std::string(name) + " must be finite and > 0, got " +
                           std::to_string(v));
  };
  positive(hbar, "hbar");
  positive(mu, "mu");
  positive(R, "R");
  positive(a, "a");
  if (!std::isfinite(V0)) throw ParameterError("V0 must be finite");
}

void SpherePoint::validate() const {
  constexpr double pi = std::numbers::pi;
  if (!(psi >= 0.0 && psi <= pi)) throw DomainError("psi outside [0, pi]");
  if (!(theta >= 0.0 && theta <= pi)) throw DomainError("theta outside [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * pi)) throw DomainError("phi outside [0, 2pi)");
}

double v_flat(double r, const PhysicalParams& p) {
  if (!(r > 0.0)) throw DomainError("v_flat: r must be > 0");
  const double x = p.a / r;
  return p.V0 * (0.5 * x * x - x);
}

double v_curved(double psi, const PhysicalParams& p) {
  constexpr double pi = std::numbers::pi;
  if (!(psi > 0.0 && psi < pi))
    throw DomainError("v_curved: psi must lie in (0, pi), singular at the poles");
  // a / (R tan psi) written with cos/sin so psi = pi/2 gives exactly 0
  const double x = p.a * std::cos(psi) / (p.R * std::sin(psi));
  return p.V0 * (0.5 * x * x - x);
}

double psi_of_r(double r, double R) {
  if (!(r >= 0.0)) throw DomainError("psi_of_r: r must be >= 0");
  return std::atan2(r, R);
}

double r_of_psi(double psi, double R) {
  if (!(psi >= 0.0 && psi < std::numbers::pi / 2))
    throw DomainError("r_of_psi: flat chart covers psi in [0, pi/2) only");
  return R * std::tan(psi);
}

EmbeddedPoint embed(const SpherePoint& pt, double R) {
  pt.validate();
  const double sp = std::sin(pt.psi);
  const double st = std::sin(pt.theta);
  EmbeddedPoint e;
  e.zeta << R * sp * st * std::cos(pt.phi), R * sp * st * std::sin(pt.phi),
      R * sp * std::cos(pt.theta), R * std::cos(pt.psi);
  return e;
}

DerivedConstants derive_constants(const PhysicalParams& p, int m) {
  if (m < 0) throw ParameterError("angular channel m must be >= 0");
  const double h2 = p.hbar * p.hbar;
  DerivedConstants c;
  c.m = m;
  c.C2 = double(m) * (m + 1) + p.mu * p.V0 * p.a * p.a / h2;
  c.C3 = 2.0 * p.mu * p.R * p.a * p.V0 / h2;
  c.A = -p.mu * p.R * p.a * p.V0 / h2;
  return c;
}

double c1_of_energy(double E, const PhysicalParams& p) {
  return (E + p.a * p.a * p.V0 / (2.0 * p.R * p.R)) / p.energy_scale();
}

double energy_of_c1(double c1, const PhysicalParams& p) {
  return c1 * p.energy_scale() - p.a * p.a * p.V0 / (2.0 * p.R * p.R);
}

}  // namespace curved_mie
