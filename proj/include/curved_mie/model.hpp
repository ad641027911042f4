#pragma once

// Physical parameters, S^3 geometry and the Mie (k = 1, l = 2) potential in
// its flat and curved forms.

#include <Eigen/Dense>

#include "curved_mie/errors.hpp"

namespace curved_mie {

/// Dimensional inputs of every formula. Default is the dimensionless system
/// hbar = mu = R = a = V0 = 1.
struct PhysicalParams {
  double hbar = 1.0;
  double mu = 1.0;
  double R = 1.0;   // sphere radius
  double a = 1.0;   // interaction coordinate
  double V0 = 1.0;  // V0 = 2 * epsilon * k

  /// Builds parameters from the well depth epsilon and exponent k (V0 = 2 eps k).
  static PhysicalParams from_depth(double hbar, double mu, double R, double a,
                                   double epsilon, double k = 1.0);

  /// Throws ParameterError unless hbar, mu, R, a > 0 and everything is finite.
  void validate() const;

  /// V0 == 0 is the free particle on the sphere; accepted, but callers may flag it.
  bool is_free() const { return V0 == 0.0; }

  /// Dimensionless coupling mu V0 a^2 / hbar^2.
  double coupling() const { return mu * V0 * a * a / (hbar * hbar); }

  /// hbar^2 / (2 mu R^2).
  double energy_scale() const { return hbar * hbar / (2.0 * mu * R * R); }
};

/// Hyperspherical angles on S^3.
struct SpherePoint {
  double psi = 0.0;    // [0, pi]
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  void validate() const;
};

/// Point of R^4 on the sphere |zeta| = R. zeta(3) is the pole coordinate
/// (written zeta_0 or zeta_4 depending on the chart).
struct EmbeddedPoint {
  Eigen::Vector4d zeta = Eigen::Vector4d::Zero();

  double norm_squared() const { return zeta.squaredNorm(); }
};

/// Constants of the reduced psi equation for angular channel m.
struct DerivedConstants {
  double C2 = 0.0;  // m(m+1) + mu V0 a^2 / hbar^2
  double C3 = 0.0;  // 2 mu R a V0 / hbar^2
  double A = 0.0;   // -mu R a V0 / hbar^2, so C3 = -2A
  int m = 0;
};

double v_flat(double r, const PhysicalParams& p);
double v_curved(double psi, const PhysicalParams& p);

double psi_of_r(double r, double R);
double r_of_psi(double psi, double R);

EmbeddedPoint embed(const SpherePoint& pt, double R);

DerivedConstants derive_constants(const PhysicalParams& p, int m);

/// C1 = (2 mu R^2 / hbar^2)(E + a^2 V0 / (2 R^2)).
double c1_of_energy(double E, const PhysicalParams& p);
double energy_of_c1(double c1, const PhysicalParams& p);

}  // namespace curved_mie
