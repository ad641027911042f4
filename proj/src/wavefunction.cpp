#include "curved_mie/wavefunction.hpp"

#include <cmath>

#include "curved_mie/specfun.hpp"

namespace curved_mie {

using cd = std::complex<double>;

namespace {

cd exp_prefactor(double alpha, double psi, ExpFactor factor) {
  return factor == ExpFactor::real ? cd(std::exp(-0.5 * alpha * psi), 0.0)
                                   : std::exp(cd(0.0, -0.5 * alpha * psi));
}

Eigen::ArrayXcd eval_with_power(const Level& lv, const Grid& grid, ExpFactor factor,
                                double extra_power) {
  const Eigen::Index n = grid.interior_size();
  Eigen::ArrayXcd out(n);
  const double power = lv.j + extra_power;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double psi = grid.nodes(i);
    const double s = std::sin(psi);
    const cd q = jacobi_eval_homogeneous(lv.degree(), lv.jacobi, cd(0.0, -std::cos(psi)), cd(s));
    out(i) = std::pow(s, power) * exp_prefactor(lv.alpha, psi, factor) * q;
  }
  return out;
}

double l2(const Eigen::ArrayXcd& v, Eigen::Index lo, Eigen::Index hi, double h) {
  return std::sqrt(v.segment(lo, hi - lo).abs2().sum() * h);
}

}  // namespace

WaveSample eval_eigenfunction(const Level& level, const Grid& grid, ExpFactor factor) {
  WaveSample w;
  w.grid = grid;
  w.values = eval_with_power(level, grid, factor, 0.0);
  w.norm = sphere_norm(w.values, grid);
  w.nonpositive_power = level.kappa() <= 1.0;
  return w;
}

Eigen::ArrayXcd eval_phi(const Level& level, const Grid& grid, ExpFactor factor) {
  return eval_with_power(level, grid, factor, 1.0);
}

double sphere_norm(const Eigen::ArrayXcd& values, const Grid& grid) {
  return simpson(values.abs2() * grid.nodes.sin().square(), grid.h);
}

std::complex<double> sphere_overlap(const WaveSample& x, const WaveSample& y) {
  const Eigen::ArrayXd s2 = x.grid.nodes.sin().square();
  const Eigen::ArrayXcd prod = x.values.conjugate() * y.values;
  return {simpson(prod.real() * s2, x.grid.h), simpson(prod.imag() * s2, x.grid.h)};
}

WaveSample normalize(const WaveSample& w) {
  if (!(w.norm > 0.0) || !std::isfinite(w.norm))
    throw NumericalError("normalize: zero or non-finite norm");
  WaveSample out = w;
  out.values = w.values / std::sqrt(w.norm);

  const Eigen::ArrayXd mag = out.values.abs();
  const Eigen::Index n = mag.size();
  Eigen::Index peak = 0;
  mag.maxCoeff(&peak);
  const double floor = 1e-3 * mag(peak);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double left = i == 0 ? 0.0 : mag(i - 1);
    if (mag(i) > floor && mag(i) >= left && mag(i) > mag(i + 1)) {
      peak = i;
      break;
    }
  }
  const cd ref = out.values(peak);
  out.values *= std::conj(ref) / std::abs(ref);
  out.norm = sphere_norm(out.values, out.grid);
  return out;
}

Eigen::ArrayXcd psi_to_phi(const Eigen::ArrayXcd& psi_values, const Grid& grid) {
  return psi_values * grid.nodes.sin();
}

Eigen::ArrayXcd phi_to_psi(const Eigen::ArrayXcd& phi, const Grid& grid) {
  return phi / grid.nodes.sin();
}

Eigen::ArrayXcd phi_to_F(const Eigen::ArrayXcd& phi, const Grid& grid, double alpha,
                         ExpFactor factor) {
  Eigen::ArrayXcd F(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    F(i) = phi(i) / exp_prefactor(alpha, grid.nodes(i), factor);
  return F;
}

Eigen::ArrayXcd F_to_phi(const Eigen::ArrayXcd& F, const Grid& grid, double alpha,
                         ExpFactor factor) {
  Eigen::ArrayXcd phi(F.size());
  for (Eigen::Index i = 0; i < F.size(); ++i)
    phi(i) = F(i) * exp_prefactor(alpha, grid.nodes(i), factor);
  return phi;
}

// (1 + cot^2)^{(1 - beta)/2} = sin^{-(1 - beta)}
Eigen::ArrayXcd F_to_f(const Eigen::ArrayXcd& F, const Grid& grid, double beta) {
  return F * grid.nodes.sin().pow(-(1.0 - beta));
}

Eigen::ArrayXcd f_to_F(const Eigen::ArrayXcd& f, const Grid& grid, double beta) {
  return f * grid.nodes.sin().pow(1.0 - beta);
}

double equation_residual(const WaveSample& w, double E, const PhysicalParams& p, int m,
                         double cut) {
  const Grid& g = w.grid;
  const Eigen::Index n = g.interior_size();
  const double h = g.h;
  Eigen::Index lo = 5;
  while (lo < n && g.nodes(lo) < cut) ++lo;
  const Eigen::Index hi = n - lo;  // exclusive; symmetric about pi/2
  if (hi - lo < 3) throw ParameterError("equation_residual: grid too coarse for the cut");

  const double k = 1.0 / p.energy_scale();
  const double cm = double(m) * (m + 1);
  Eigen::ArrayXcd flux(n), energy(n), potential(n), centrifugal(n);
  flux.setZero();
  energy.setZero();
  potential.setZero();
  centrifugal.setZero();
  for (Eigen::Index i = lo; i < hi; ++i) {
    const double psi = g.nodes(i);
    const double sp = std::sin(psi + 0.5 * h);
    const double sm = std::sin(psi - 0.5 * h);
    const double s2 = std::sin(psi) * std::sin(psi);
    flux(i) = (sp * sp * (w.values(i + 1) - w.values(i)) -
               sm * sm * (w.values(i) - w.values(i - 1))) /
              (h * h);
    energy(i) = s2 * k * E * w.values(i);
    potential(i) = -s2 * k * v_curved(psi, p) * w.values(i);
    centrifugal(i) = -cm * w.values(i);
  }
  const Eigen::ArrayXcd res = flux + energy + potential + centrifugal;
  const double scale =
      l2(flux, lo, hi, h) + l2(energy, lo, hi, h) + l2(potential, lo, hi, h) + l2(centrifugal, lo, hi, h);
  const double r = l2(res, lo, hi, h);
  return scale > 0.0 ? r / scale : r;
}

double boundary_decay_exponent(const WaveSample& w, int n_fit) {
  if (n_fit < 2 || n_fit > w.values.size()) throw ParameterError("boundary fit: bad point count");
  Eigen::VectorXd x(n_fit), y(n_fit);
  for (int i = 0; i < n_fit; ++i) {
    x(i) = std::log(std::sin(w.grid.nodes(i)));
    y(i) = std::log(std::abs(w.values(i)));
  }
  const double xm = x.mean();
  const double ym = y.mean();
  const double sxx = (x.array() - xm).square().sum();
  const double sxy = ((x.array() - xm) * (y.array() - ym)).sum();
  return sxy / sxx;
}

}  // namespace curved_mie
