#pragma once

// Type-A factorization and the so(2,1) generators acting in the psi variable.
//
// Ladder operators (psi form):
//   A^{+-}(j) = -+ i sin(psi) d/dpsi + i (j + s +- 1/2) cos(psi) + t sin(psi)
// Generators on Phi = e^{i nu y1} f(psi) e^{i kappa y2}; the circle variables
// are never discretized, d/dy1 -> i nu and d/dy2 -> i kappa:
//   X1 = nu, X2 = kappa
//   O1^{+-} = e^{+-i y1} (+- sin d/dpsi + nu cos - i kappa sin) = -i e^{+-i y1} A^{-+}
//   O2^{+-} = e^{+-i y2} (+- sin d/dpsi + kappa cos - i nu sin) = -i e^{+-i y2} A^{-+}
//   [X, O^{+-}] = +- O^{+-},  [O^+, O^-] = -2X,  C = -O^+ O^- + X(X - 1)
//
// On a physical level (l + 1 = n + j, A = -mu R a V0 / hbar^2) the
// realization nu = iA/(l+1), kappa = l+1 with f = phi_n satisfies
// C Phi = j(j+1) Phi, and
//   A^+(j+1) A^-(j+1) phi = ((j + 1/2)^2 - (j + 1 + s)^2) phi
//   A^-(j)   A^+(j)   phi = ((j + 1/2)^2 - (j + s)^2) phi.

#include <complex>

#include <Eigen/Dense>

#include "curved_mie/grid.hpp"
#include "curved_mie/model.hpp"
#include "curved_mie/spectrum.hpp"

namespace curved_mie {

using Complex = std::complex<double>;

/// mode1: t = +-(l+1), j + s + 1/2 = +-iA/(l+1)
/// mode2: t = +-iA/(l+1), j + s + 1/2 = +-(l+1)
enum class Branch { mode1, mode2 };

struct BranchSigns {
  int t = +1;
  int shift = +1;  // sign of j + s + 1/2
};

struct FactorizationParams {
  Complex s;
  Complex t;
  double ell = 0.0;  // real; l + 1 = n + j on physical levels
  double j = 0.0;
  double A = 0.0;
  Branch branch = Branch::mode1;
  double epsilon = 0.0;  // -A^2/t^2 + t^2

  /// j + s + 1/2.
  Complex shift() const { return j + s + 0.5; }
  /// R(k) = (k + s)^2.
  Complex R(double index) const { return (index + s) * (index + s); }
  /// Eigenvalue in the factorization identities, (j + 1/2)^2.
  double factorization_eigenvalue() const { return (j + 0.5) * (j + 0.5); }
};

FactorizationParams solve_st(double ell, double A, Branch branch, BranchSigns signs = {},
                             double j = 0.0);

/// Parameters for a physical level, ell = n + j - 1.
FactorizationParams factorization_for_level(const Level& level, const PhysicalParams& p,
                                            Branch branch, BranchSigns signs = {});

struct MatchingResiduals {
  double product = 0.0;          // |t (j + s + 1/2) - iA|
  double sum_squared = 0.0;      // |t^2 + (j+s)(j+s+1) - (eps^2 - 1/4)|
  double sum_unsquared = 0.0;    // |t^2 + (j+s)(j+s+1) - (eps - 1/4)|
  double epsilon_equated = 0.0;  // |eps - ((l+1)^2 - A^2/(l+1)^2)|
};

MatchingResiduals matching_residuals(const FactorizationParams& fp);

/// 4th-order first derivative: 5-point central stencil inside, one-sided
/// 4th-order at the two points nearest each end.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> derivative(
    const Eigen::ArrayBase<Derived>& f, double h) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = f.size();
  if (n < 5) throw ParameterError("derivative: need at least 5 samples");
  Eigen::Array<Scalar, Eigen::Dynamic, 1> d(n);
  const double inv = 1.0 / (12.0 * h);
  for (Eigen::Index i = 2; i < n - 2; ++i)
    d(i) = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) * inv;
  d(0) = (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) * inv;
  d(1) = (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) * inv;
  d(n - 1) = (25.0 * f(n - 1) - 48.0 * f(n - 2) + 36.0 * f(n - 3) - 16.0 * f(n - 4) +
              3.0 * f(n - 5)) * inv;
  d(n - 2) = (3.0 * f(n - 1) + 10.0 * f(n - 2) - 18.0 * f(n - 3) + 6.0 * f(n - 4) -
              f(n - 5)) * inv;
  return d;
}

/// f -> c_d(psi) f' + c_m(psi) f on a grid.
class GridOperator {
public:
  GridOperator(Grid grid, Eigen::ArrayXcd deriv_coeff, Eigen::ArrayXcd mult_coeff);

  Eigen::ArrayXcd operator()(const Eigen::ArrayXcd& f) const;
  /// |c_d f'| + |c_m f| pointwise, the size of the terms before they cancel.
  Eigen::ArrayXd term_magnitude(const Eigen::ArrayXcd& f) const;

  const Grid& grid() const { return grid_; }

private:
  Grid grid_;
  Eigen::ArrayXcd deriv_;
  Eigen::ArrayXcd mult_;
};

/// A^{sign}(j) built from j + s and t directly.
GridOperator ladder_at(const Grid& grid, int sign, Complex j_plus_s, Complex t);

/// A^{sign}(j_index) with the s, t of fp.
GridOperator ladder(const FactorizationParams& fp, const Grid& grid, int sign, double j_index);
inline GridOperator ladder(const FactorizationParams& fp, const Grid& grid, int sign) {
  return ladder(fp, grid, sign, fp.j);
}

enum class FactorizationIdentity {
  raise_lower,  // A^+(j+1) A^-(j+1) Y = (eps_f - R(j+1)) Y
  lower_raise,  // A^-(j) A^+(j) Y = (eps_f - R(j)) Y
};

/// ||lhs - rhs|| / ||Y|| in discrete L2(dpsi).
double factorization_residual(const Eigen::ArrayXcd& Y, const Grid& grid,
                              const FactorizationParams& fp, FactorizationIdentity which);

/// Bilinear pairing int f g dpsi / sin^2 psi (no conjugation).
Complex ladder_pairing(const Eigen::ArrayXcd& f, const Eigen::ArrayXcd& g, const Grid& grid);

/// |(A^+ f, g) - (f, A^- g)| over the Cauchy-Schwarz bound
/// ||A^+ f|| ||g|| + ||f|| ||A^- g|| in the same weighted norm.
double adjoint_residual(const FactorizationParams& fp, const Grid& grid, const Eigen::ArrayXcd& f,
                        const Eigen::ArrayXcd& g);

/// Function of psi with algebra indices.
struct IndexedFunction {
  Complex nu;
  Complex kappa;
  Eigen::ArrayXcd values;
};

enum class Generator { first = 1, second = 2 };

IndexedFunction apply_X(Generator which, const IndexedFunction& phi);

/// O^{sign} of the given generator. fp.branch must be mode1 for O1, mode2 for O2.
IndexedFunction apply_O(Generator which, int sign, const IndexedFunction& phi, const Grid& grid,
                        const FactorizationParams& fp);

/// Phi_{nu,kappa} for a level: nu = iA/(n+j), kappa = n+j, f = normalized phi_n.
IndexedFunction eigen_realization(const Level& level, const PhysicalParams& p, const Grid& grid);

enum class CommutatorPair {
  X1_O1_plus,
  X1_O1_minus,
  O1_plus_O1_minus,
  X2_O2_plus,
  X2_O2_minus,
  O2_plus_O2_minus,
  X2_O1_plus,
  X2_O1_minus,
};

const char* to_string(CommutatorPair pair);

/// ||PQ Phi - QP Phi - E Phi|| / (||PQ Phi|| + ||QP Phi|| + ||E Phi||), E the expected
/// right-hand side. For [X, O] pairs the scale also includes (|X| + 1) times the
/// norm of O's uncancelled terms. fp must match the O generator of the pair.
double commutator_residual(CommutatorPair pair, const IndexedFunction& phi, const Grid& grid,
                           const FactorizationParams& fp);

/// C Phi = -O^+ O^- Phi + X(X - 1) Phi using the generator `via`.
IndexedFunction casimir_apply(const IndexedFunction& phi, const Grid& grid,
                              const FactorizationParams& fp, Generator via);

/// ||C Phi - j(j+1) Phi|| / ||Phi||.
double casimir_eigencheck(const IndexedFunction& phi, const Grid& grid,
                          const FactorizationParams& fp, Generator via, double j);

double l2_norm(const Eigen::ArrayXcd& v, const Grid& grid);

}  // namespace curved_mie
