#pragma once

// Analytic eigenfunctions Psi_n(psi) and the chain of substitutions
// Psi -> phi -> F -> f that reduces the psi equation to Jacobi's.

#include <complex>

#include <Eigen/Dense>

#include "curved_mie/grid.hpp"
#include "curved_mie/model.hpp"
#include "curved_mie/spectrum.hpp"

namespace curved_mie {

/// Exponential prefactor of the eigenfunction.
///   real     e^{-alpha psi / 2}   (matches the phi = e^{-alpha psi/2} F substitution)
///   printed  e^{-i alpha psi / 2} (the closed form as usually printed)
enum class ExpFactor { real, printed };

struct WaveSample {
  Grid grid;
  Eigen::ArrayXcd values;
  double norm = 0.0;  // int |Psi|^2 sin^2 psi dpsi (Simpson)
  /// n + j <= 1: the sine prefactor has nonpositive power and need not vanish at the poles.
  bool nonpositive_power = false;
};

/// Psi(psi) = sin^j(psi) e^{-alpha psi/2} Q_{n-1}(psi),
/// Q_d = sin^d(psi) P_d^{(a,b)}(-i cot psi), which is
/// sin^{n+j-1} e^{-alpha psi/2} P_{n-1}(-i cot psi) without the overflow at the poles.
WaveSample eval_eigenfunction(const Level& level, const Grid& grid,
                              ExpFactor factor = ExpFactor::real);

/// Same construction for phi = sin(psi) Psi.
Eigen::ArrayXcd eval_phi(const Level& level, const Grid& grid, ExpFactor factor = ExpFactor::real);

/// Unit norm under sin^2 psi dpsi; global phase fixed so the value at the
/// first interior maximum of |Psi| is real and positive.
WaveSample normalize(const WaveSample& w);

double sphere_norm(const Eigen::ArrayXcd& values, const Grid& grid);
std::complex<double> sphere_overlap(const WaveSample& x, const WaveSample& y);

// Substitution maps on interior points.
Eigen::ArrayXcd psi_to_phi(const Eigen::ArrayXcd& psi_values, const Grid& grid);
Eigen::ArrayXcd phi_to_psi(const Eigen::ArrayXcd& phi, const Grid& grid);
Eigen::ArrayXcd phi_to_F(const Eigen::ArrayXcd& phi, const Grid& grid, double alpha,
                         ExpFactor factor = ExpFactor::real);
Eigen::ArrayXcd F_to_phi(const Eigen::ArrayXcd& F, const Grid& grid, double alpha,
                         ExpFactor factor = ExpFactor::real);
Eigen::ArrayXcd F_to_f(const Eigen::ArrayXcd& F, const Grid& grid, double beta);
Eigen::ArrayXcd f_to_F(const Eigen::ArrayXcd& f, const Grid& grid, double beta);

/// Residual of the radial equation in flux form,
///   d/dpsi(sin^2 dPsi/dpsi) + [sin^2 (2 mu R^2/hbar^2)(E - V) - m(m+1)] Psi,
/// discretized with the conservative 3-point stencil, in discrete L2 over
/// interior points with psi in [cut, pi - cut] and at least 5 points dropped
/// at each end. Normalized by the sum of the term norms.
double equation_residual(const WaveSample& w, double E, const PhysicalParams& p, int m,
                         double cut = 0.0);

/// Least-squares slope of log|Psi| against log(sin psi) over the n_fit
/// grid points nearest psi = 0.
double boundary_decay_exponent(const WaveSample& w, int n_fit = 20);

}  // namespace curved_mie
