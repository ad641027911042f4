#include "curved_mie/algebra.hpp"

#include <cmath>

#include "curved_mie/wavefunction.hpp"

namespace curved_mie {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_branch(Generator which, const FactorizationParams& fp) {
  const Branch needed = which == Generator::first ? Branch::mode1 : Branch::mode2;
  if (fp.branch != needed)
    throw ParameterError(which == Generator::first
                             ? "O1 needs factorization parameters from branch mode1"
                             : "O2 needs factorization parameters from branch mode2");
}

}  // namespace

FactorizationParams solve_st(double ell, double A, Branch branch, BranchSigns signs, double j) {
  if (!(ell >= 0.0)) throw ParameterError("solve_st: ell must be >= 0");
  if (std::abs(signs.t) != 1 || std::abs(signs.shift) != 1)
    throw ParameterError("solve_st: signs must be +1 or -1");
  const double lp1 = ell + 1.0;
  FactorizationParams fp;
  fp.ell = ell;
  fp.j = j;
  fp.A = A;
  fp.branch = branch;
  Complex shift;
  if (branch == Branch::mode1) {
    fp.t = double(signs.t) * lp1;
    shift = double(signs.shift) * kI * A / lp1;
  } else {
    if (A == 0.0) throw ParameterError("solve_st: mode2 needs A != 0 (t would vanish)");
    fp.t = double(signs.t) * kI * A / lp1;
    shift = double(signs.shift) * lp1;
  }
  fp.s = shift - j - 0.5;
  fp.epsilon = (-A * A / (fp.t * fp.t) + fp.t * fp.t).real();
  return fp;
}

FactorizationParams factorization_for_level(const Level& level, const PhysicalParams& p,
                                            Branch branch, BranchSigns signs) {
  const DerivedConstants c = derive_constants(p, level.m);
  return solve_st(level.kappa() - 1.0, c.A, branch, signs, level.j);
}

MatchingResiduals matching_residuals(const FactorizationParams& fp) {
  const double lp1 = fp.ell + 1.0;
  const Complex js = fp.shift() - 0.5;
  const Complex lhs = fp.t * fp.t + js * (js + 1.0);
  MatchingResiduals r;
  r.product = std::abs(fp.t * fp.shift() - kI * fp.A);
  r.sum_squared = std::abs(lhs - (fp.epsilon * fp.epsilon - 0.25));
  r.sum_unsquared = std::abs(lhs - (fp.epsilon - 0.25));
  r.epsilon_equated = std::abs(fp.epsilon - (lp1 * lp1 - fp.A * fp.A / (lp1 * lp1)));
  return r;
}

GridOperator::GridOperator(Grid grid, Eigen::ArrayXcd deriv_coeff, Eigen::ArrayXcd mult_coeff)
    : grid_(std::move(grid)), deriv_(std::move(deriv_coeff)), mult_(std::move(mult_coeff)) {
  if (deriv_.size() != grid_.interior_size() || mult_.size() != grid_.interior_size())
    throw ParameterError("GridOperator: coefficient size does not match the grid");
}

Eigen::ArrayXcd GridOperator::operator()(const Eigen::ArrayXcd& f) const {
  if (f.size() != grid_.interior_size())
    throw ParameterError("GridOperator: sample size does not match the grid");
  return deriv_ * derivative(f, grid_.h) + mult_ * f;
}

Eigen::ArrayXd GridOperator::term_magnitude(const Eigen::ArrayXcd& f) const {
  if (f.size() != grid_.interior_size())
    throw ParameterError("GridOperator: sample size does not match the grid");
  return deriv_.abs() * derivative(f, grid_.h).abs() + mult_.abs() * f.abs();
}

GridOperator ladder_at(const Grid& grid, int sign, Complex j_plus_s, Complex t) {
  const Eigen::ArrayXd s = grid.nodes.sin();
  const Eigen::ArrayXd c = grid.nodes.cos();
  const double sg = sign > 0 ? 1.0 : -1.0;
  Eigen::ArrayXcd deriv = (-sg * kI) * s.cast<Complex>();
  Eigen::ArrayXcd mult =
      (kI * (j_plus_s + 0.5 * sg)) * c.cast<Complex>() + t * s.cast<Complex>();
  return GridOperator(grid, std::move(deriv), std::move(mult));
}

GridOperator ladder(const FactorizationParams& fp, const Grid& grid, int sign, double j_index) {
  return ladder_at(grid, sign, j_index + fp.s, fp.t);
}

double l2_norm(const Eigen::ArrayXcd& v, const Grid& grid) {
  return std::sqrt(v.abs2().sum() * grid.h);
}

double factorization_residual(const Eigen::ArrayXcd& Y, const Grid& grid,
                              const FactorizationParams& fp, FactorizationIdentity which) {
  const double ef = fp.factorization_eigenvalue();
  Eigen::ArrayXcd lhs;
  Complex rhs;
  if (which == FactorizationIdentity::raise_lower) {
    const double k = fp.j + 1.0;
    lhs = ladder(fp, grid, +1, k)(ladder(fp, grid, -1, k)(Y));
    rhs = ef - fp.R(k);
  } else {
    const double k = fp.j;
    lhs = ladder(fp, grid, -1, k)(ladder(fp, grid, +1, k)(Y));
    rhs = ef - fp.R(k);
  }
  return l2_norm(lhs - rhs * Y, grid) / l2_norm(Y, grid);
}

Complex ladder_pairing(const Eigen::ArrayXcd& f, const Eigen::ArrayXcd& g, const Grid& grid) {
  return (f * g / grid.nodes.sin().square().cast<Complex>()).sum() * grid.h;
}

double adjoint_residual(const FactorizationParams& fp, const Grid& grid, const Eigen::ArrayXcd& f,
                        const Eigen::ArrayXcd& g) {
  const Eigen::ArrayXcd up_f = ladder(fp, grid, +1)(f);
  const Eigen::ArrayXcd down_g = ladder(fp, grid, -1)(g);
  const Complex lhs = ladder_pairing(up_f, g, grid);
  const Complex rhs = ladder_pairing(f, down_g, grid);
  auto wnorm = [&](const Eigen::ArrayXcd& v) {
    return std::sqrt((v.abs2() / grid.nodes.sin().square()).sum() * grid.h);
  };
  const double scale = wnorm(up_f) * wnorm(g) + wnorm(f) * wnorm(down_g);
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

IndexedFunction apply_X(Generator which, const IndexedFunction& phi) {
  IndexedFunction out = phi;
  out.values = (which == Generator::first ? phi.nu : phi.kappa) * phi.values;
  return out;
}

namespace {

// O^{+-} = -i A^{-+}(u) with u = own index +- 1/2 and t = the other index;
// this returns the A^{-+} part
GridOperator o_ladder(Generator which, int sign, const IndexedFunction& phi, const Grid& grid) {
  const double sg = sign > 0 ? 1.0 : -1.0;
  const Complex own = which == Generator::first ? phi.nu : phi.kappa;
  const Complex other = which == Generator::first ? phi.kappa : phi.nu;
  return ladder_at(grid, -sign, own + 0.5 * sg, other);
}

}  // namespace

IndexedFunction apply_O(Generator which, int sign, const IndexedFunction& phi, const Grid& grid,
                        const FactorizationParams& fp) {
  require_branch(which, fp);
  const double sg = sign > 0 ? 1.0 : -1.0;
  IndexedFunction out = phi;
  out.values = -kI * o_ladder(which, sign, phi, grid)(phi.values);
  if (which == Generator::first)
    out.nu += sg;
  else
    out.kappa += sg;
  return out;
}

IndexedFunction eigen_realization(const Level& level, const PhysicalParams& p, const Grid& grid) {
  const DerivedConstants c = derive_constants(p, level.m);
  const WaveSample w = normalize(eval_eigenfunction(level, grid));
  IndexedFunction out;
  out.kappa = level.kappa();
  out.nu = kI * c.A / level.kappa();
  out.values = psi_to_phi(w.values, grid);
  return out;
}

const char* to_string(CommutatorPair pair) {
  switch (pair) {
    case CommutatorPair::X1_O1_plus: return "[X1,O1+]=+O1+";
    case CommutatorPair::X1_O1_minus: return "[X1,O1-]=-O1-";
    case CommutatorPair::O1_plus_O1_minus: return "[O1+,O1-]=-2X1";
    case CommutatorPair::X2_O2_plus: return "[X2,O2+]=+O2+";
    case CommutatorPair::X2_O2_minus: return "[X2,O2-]=-O2-";
    case CommutatorPair::O2_plus_O2_minus: return "[O2+,O2-]=-2X2";
    case CommutatorPair::X2_O1_plus: return "[X2,O1+]=0";
    case CommutatorPair::X2_O1_minus: return "[X2,O1-]=0";
  }
  return "unknown";
}

double commutator_residual(CommutatorPair pair, const IndexedFunction& phi, const Grid& grid,
                           const FactorizationParams& fp) {
  // PQ Phi - QP Phi - expected, measured against the norms of those three terms.
  // For [X, O] the terms of O Phi can cancel (O annihilating Phi), so the
  // size of the uncancelled terms times |X| + 1 is added to the scale.
  Eigen::ArrayXcd pq, qp, expected;
  double terms = 0.0;
  auto x_o = [&](Generator x, Generator o, int sign, bool expect_o) {
    const IndexedFunction o_phi = apply_O(o, sign, phi, grid, fp);
    pq = apply_X(x, o_phi).values;
    qp = apply_O(o, sign, apply_X(x, phi), grid, fp).values;
    expected = expect_o ? Eigen::ArrayXcd(double(sign) * o_phi.values)
                        : Eigen::ArrayXcd::Zero(phi.values.size());
    const Complex xi = x == Generator::first ? phi.nu : phi.kappa;
    const Eigen::ArrayXd mag = o_ladder(o, sign, phi, grid).term_magnitude(phi.values);
    terms = (std::abs(xi) + 1.0) * std::sqrt(mag.square().sum() * grid.h);
  };
  auto o_o = [&](Generator g) {
    pq = apply_O(g, +1, apply_O(g, -1, phi, grid, fp), grid, fp).values;
    qp = apply_O(g, -1, apply_O(g, +1, phi, grid, fp), grid, fp).values;
    expected = -2.0 * apply_X(g, phi).values;
  };
  switch (pair) {
    case CommutatorPair::X1_O1_plus: x_o(Generator::first, Generator::first, +1, true); break;
    case CommutatorPair::X1_O1_minus: x_o(Generator::first, Generator::first, -1, true); break;
    case CommutatorPair::O1_plus_O1_minus: o_o(Generator::first); break;
    case CommutatorPair::X2_O2_plus: x_o(Generator::second, Generator::second, +1, true); break;
    case CommutatorPair::X2_O2_minus: x_o(Generator::second, Generator::second, -1, true); break;
    case CommutatorPair::O2_plus_O2_minus: o_o(Generator::second); break;
    case CommutatorPair::X2_O1_plus: x_o(Generator::second, Generator::first, +1, false); break;
    case CommutatorPair::X2_O1_minus: x_o(Generator::second, Generator::first, -1, false); break;
  }
  const double scale =
      l2_norm(pq, grid) + l2_norm(qp, grid) + l2_norm(expected, grid) + terms;
  const double r = l2_norm(pq - qp - expected, grid);
  return scale > 0.0 ? r / scale : r;
}

IndexedFunction casimir_apply(const IndexedFunction& phi, const Grid& grid,
                              const FactorizationParams& fp, Generator via) {
  const IndexedFunction up_down = apply_O(via, +1, apply_O(via, -1, phi, grid, fp), grid, fp);
  const Complex x = via == Generator::first ? phi.nu : phi.kappa;
  IndexedFunction out = phi;
  out.values = -up_down.values + x * (x - 1.0) * phi.values;
  return out;
}

double casimir_eigencheck(const IndexedFunction& phi, const Grid& grid,
                          const FactorizationParams& fp, Generator via, double j) {
  const IndexedFunction c = casimir_apply(phi, grid, fp, via);
  return l2_norm(c.values - j * (j + 1.0) * phi.values, grid) / l2_norm(phi.values, grid);
}

}  // namespace curved_mie
