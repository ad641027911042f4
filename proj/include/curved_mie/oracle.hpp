#pragma once

// Finite-difference Sturm-Liouville eigensolver used as independent ground
// truth: 3-point discretizations of the curved psi equation (in the
// phi = sin(psi) Psi form) and of the flat radial Kratzer equation,
// Sturm-sequence bisection for eigenvalues, inverse iteration for vectors.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curved_mie/grid.hpp"
#include "curved_mie/model.hpp"

namespace curved_mie {

/// Symmetric tridiagonal matrix on the interior nodes of a grid.
struct TridiagonalOperator {
  Eigen::ArrayXd diagonal;      // N - 1
  Eigen::ArrayXd off_diagonal;  // N - 2
  Grid grid;
  double scale = 1.0;  // kinetic prefactor applied (hbar^2/(2 mu R^2) curved, hbar^2/(2 mu) flat)

  Eigen::Index size() const { return diagonal.size(); }
  /// Gershgorin bounds.
  std::pair<double, double> spectrum_bounds() const;
  double norm_bound() const;
  Eigen::ArrayXd apply(const Eigen::ArrayXd& v) const;
};

struct EigenResult {
  std::vector<double> eigenvalues;            // ascending
  std::vector<Eigen::ArrayXd> eigenvectors;   // optional; sum v_i^2 h = 1
  int grid_size = 0;
  bool extrapolated = false;
  std::vector<std::string> warnings;
};

/// H = s (-d^2/dpsi^2 + m(m+1) csc^2 psi - 1) + V(psi), s = hbar^2/(2 mu R^2),
/// Dirichlet at psi = 0, pi. Its eigenvalues approximate E directly.
TridiagonalOperator assemble_curved(const PhysicalParams& p, int m, int N);

/// H = (hbar^2/2mu)(-d^2/dr^2 + m(m+1)/r^2) + V_flat(r) on (0, r_max), Dirichlet ends.
TridiagonalOperator assemble_flat(const PhysicalParams& p, int m, int N, double r_max);

/// Number of eigenvalues strictly below lambda.
int sturm_count(const TridiagonalOperator& op, double lambda);

/// k smallest eigenvalues by bisection to absolute width tol.
EigenResult lowest_k(const TridiagonalOperator& op, int k, double tol);

/// Inverse iteration at a converged eigenvalue; unit trapezoidal norm, first
/// significant component positive.
Eigen::ArrayXd eigenvector(const TridiagonalOperator& op, double eigenvalue, double tol = 1e-12);

/// Richardson (4 lambda_{2N} - lambda_N) / 3 per index.
EigenResult extrapolate(const EigenResult& coarse, const EigenResult& fine);

/// Convenience: solves at N and 2N and extrapolates.
EigenResult solve_curved(const PhysicalParams& p, int m, int N, int k, double tol = 1e-12);

/// Solves the flat problem with eigenvectors and records a truncation warning
/// when |u| near r_max exceeds 1e-10 of its maximum.
EigenResult solve_flat(const PhysicalParams& p, int m, int N, double r_max, int k,
                       double tol = 1e-12);

/// max_i |u_i(r_max - h)| / max |u_i| over the eigenvectors in res.
double truncation_amplitude(const EigenResult& res);

}  // namespace curved_mie
