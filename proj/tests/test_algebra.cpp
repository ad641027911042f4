#include <doctest.h>

#include <cmath>

#include "curved_mie/algebra.hpp"
#include "curved_mie/wavefunction.hpp"

using namespace curved_mie;

namespace {

const PhysicalParams kDefault;
constexpr Complex kI{0.0, 1.0};

Eigen::ArrayXcd bump(const Grid& g) {
  const Eigen::ArrayXd s = g.nodes.sin();
  const Eigen::ArrayXd c = g.nodes.cos();
  return (s.pow(8) * c.exp()).cast<Complex>() * (Complex(1.0, 0.0) + kI * 0.5 * c.cast<Complex>());
}

Eigen::ArrayXcd level_phi(const Level& lv, const Grid& g) {
  return psi_to_phi(normalize(eval_eigenfunction(lv, g)).values, g);
}

}  // namespace

TEST_CASE("solve_st examples") {
  const FactorizationParams a = solve_st(1.0, 0.0, Branch::mode1);
  CHECK(a.t == Complex(2.0));
  CHECK(std::abs(a.shift()) < 1e-15);
  CHECK(a.epsilon == doctest::Approx(4.0));

  const FactorizationParams b = solve_st(0.0, -1.0, Branch::mode1);
  CHECK(std::abs(b.t - 1.0) < 1e-15);
  CHECK(std::abs(b.shift() - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(b.epsilon) < 1e-15);

  const FactorizationParams c = solve_st(0.0, -1.0, Branch::mode2);
  CHECK(std::abs(c.t - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(c.shift() - 1.0) < 1e-15);

  CHECK_THROWS_AS(solve_st(1.0, 0.0, Branch::mode2), ParameterError);
  CHECK_THROWS_AS(solve_st(-0.5, 1.0, Branch::mode1), ParameterError);
  CHECK_THROWS_AS(solve_st(1.0, 1.0, Branch::mode1, {2, 1}), ParameterError);
}

TEST_CASE("matching readings over all sign choices") {
  for (Branch br : {Branch::mode1, Branch::mode2})
    for (int st : {-1, 1})
      for (int ss : {-1, 1}) {
        const FactorizationParams fp = solve_st(1.3, -0.9, br, {st, ss}, 0.4);
        const MatchingResiduals r = matching_residuals(fp);
        CHECK(r.sum_unsquared < 1e-12);
        CHECK(r.epsilon_equated < 1e-12);
        CHECK(r.sum_squared > 1e-3);
        if (st == ss)
          CHECK(r.product < 1e-12);
        else
          CHECK(r.product > 1e-3);
      }
}

TEST_CASE("ladder on sin^2 against the symbolic result") {
  const Grid g = Grid::sphere(4096);
  const Eigen::ArrayXd s = g.nodes.sin();
  const Eigen::ArrayXd c = g.nodes.cos();
  const Eigen::ArrayXcd f = s.square().cast<Complex>();
  const Complex js(0.3, -0.2), t(0.7, 0.1);
  for (int sign : {-1, 1}) {
    const Eigen::ArrayXcd got = ladder_at(g, sign, js, t)(f);
    const double sg = sign;
    const Eigen::ArrayXcd expect = -sg * kI * (2.0 * s.square() * c).cast<Complex>() +
                                   kI * (js + 0.5 * sg) * (c * s.square()).cast<Complex>() +
                                   t * s.cube().cast<Complex>();
    CHECK((got - expect).abs().maxCoeff() < 1e-8);
  }
  const Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(g.interior_size());
  CHECK(ladder_at(g, 1, js, t)(zero).abs().maxCoeff() == 0.0);
}

TEST_CASE("derivative stencil is fourth order") {
  auto err = [](int N) {
    const Grid g = Grid::sphere(N);
    const Eigen::ArrayXd f = (2.0 * g.nodes).sin() * g.nodes.exp();
    const Eigen::ArrayXd d = 2.0 * (2.0 * g.nodes).cos() * g.nodes.exp() + f;
    return (derivative(f, g.h) - d).abs().maxCoeff();
  };
  CHECK(std::log2(err(128) / err(256)) > 3.7);
  CHECK_THROWS_AS(derivative(Eigen::ArrayXd::Ones(4), 0.1), ParameterError);
}

TEST_CASE("GridOperator validates sizes") {
  const Grid g = Grid::sphere(64);
  CHECK_THROWS_AS(GridOperator(g, Eigen::ArrayXcd::Zero(3), Eigen::ArrayXcd::Zero(3)),
                  ParameterError);
}

TEST_CASE("factorization on physical levels") {
  const Grid g = Grid::sphere(4096);
  for (int m : {0, 1})
    for (int n = 1; n <= 3; ++n) {
      const Level lv = level(n, m, kDefault, SolvabilityMode::direct);
      const FactorizationParams fp = factorization_for_level(lv, kDefault, Branch::mode2);
      const Eigen::ArrayXcd phi = level_phi(lv, g);
      CHECK(factorization_residual(phi, g, fp, FactorizationIdentity::raise_lower) < 1e-5);
      CHECK(factorization_residual(phi, g, fp, FactorizationIdentity::lower_raise) < 1e-5);
    }
}

TEST_CASE("free case factorizes in mode1") {
  PhysicalParams free = kDefault;
  free.V0 = 0.0;
  const Grid g = Grid::sphere(4096);
  const Level lv = level(2, 1, free, SolvabilityMode::direct);
  const FactorizationParams fp = factorization_for_level(lv, free, Branch::mode1);
  CHECK(factorization_residual(level_phi(lv, g), g, fp, FactorizationIdentity::raise_lower) < 1e-5);
}

TEST_CASE("a non-eigenfunction fails the factorization") {
  const Grid g = Grid::sphere(2048);
  const Level lv = level(2, 0, kDefault, SolvabilityMode::direct);
  const FactorizationParams fp = factorization_for_level(lv, kDefault, Branch::mode2);
  CHECK(factorization_residual(bump(g), g, fp, FactorizationIdentity::raise_lower) > 0.1);
}

TEST_CASE("X and O act on indices") {
  const Grid g = Grid::sphere(256);
  const IndexedFunction phi{Complex(0.4, 0.3), Complex(1.7), bump(g)};
  const IndexedFunction x1 = apply_X(Generator::first, phi);
  CHECK((x1.values - phi.nu * phi.values).abs().maxCoeff() < 1e-15);
  const IndexedFunction x2 = apply_X(Generator::second, phi);
  CHECK((x2.values - phi.kappa * phi.values).abs().maxCoeff() < 1e-15);

  const FactorizationParams f1 = solve_st(0.7, -0.8, Branch::mode1, {}, 0.3);
  const FactorizationParams f2 = solve_st(0.7, -0.8, Branch::mode2, {}, 0.3);
  const IndexedFunction up = apply_O(Generator::first, +1, phi, g, f1);
  CHECK(up.nu == phi.nu + 1.0);
  CHECK(up.kappa == phi.kappa);
  const IndexedFunction down = apply_O(Generator::second, -1, phi, g, f2);
  CHECK(down.kappa == phi.kappa - 1.0);
  CHECK(down.nu == phi.nu);
  CHECK_THROWS_AS(apply_O(Generator::first, +1, phi, g, f2), ParameterError);
  CHECK_THROWS_AS(apply_O(Generator::second, +1, phi, g, f1), ParameterError);
}

TEST_CASE("commutators on a bump") {
  const Grid g = Grid::sphere(4096);
  const IndexedFunction phi{Complex(0.4, 0.3), Complex(1.7), bump(g)};
  const FactorizationParams f1 = solve_st(0.7, -0.8, Branch::mode1, {}, 0.3);
  const FactorizationParams f2 = solve_st(0.7, -0.8, Branch::mode2, {}, 0.3);
  for (CommutatorPair pair : {CommutatorPair::X1_O1_plus, CommutatorPair::X1_O1_minus,
                              CommutatorPair::X2_O1_plus, CommutatorPair::X2_O1_minus})
    CHECK(commutator_residual(pair, phi, g, f1) < 1e-13);
  for (CommutatorPair pair : {CommutatorPair::X2_O2_plus, CommutatorPair::X2_O2_minus})
    CHECK(commutator_residual(pair, phi, g, f2) < 1e-13);
  CHECK(commutator_residual(CommutatorPair::O1_plus_O1_minus, phi, g, f1) < 1e-6);
  CHECK(commutator_residual(CommutatorPair::O2_plus_O2_minus, phi, g, f2) < 1e-6);
}

TEST_CASE("Casimir on the eigen-realization") {
  const Grid g = Grid::sphere(4096);
  for (int n = 1; n <= 3; ++n) {
    const Level lv = level(n, 0, kDefault, SolvabilityMode::direct);
    IndexedFunction phi = eigen_realization(lv, kDefault, g);
    const FactorizationParams f1 = factorization_for_level(lv, kDefault, Branch::mode1);
    const FactorizationParams f2 = factorization_for_level(lv, kDefault, Branch::mode2);
    const double r1 = casimir_eigencheck(phi, g, f1, Generator::first, lv.j);
    const double r2 = casimir_eigencheck(phi, g, f2, Generator::second, lv.j);
    CHECK(r1 < 1e-4);
    CHECK(r2 < 1e-4);
    // residual is invariant under a complex rescaling
    phi.values *= Complex(2.0, -3.0);
    CHECK(casimir_eigencheck(phi, g, f1, Generator::first, lv.j) == doctest::Approx(r1).epsilon(1e-10));
    // and sees a wrong eigenvalue
    CHECK(casimir_eigencheck(phi, g, f1, Generator::first, lv.j + 0.1) > 0.05);
  }
}

TEST_CASE("ladder adjoint on bumps") {
  const Grid g = Grid::sphere(4096);
  const FactorizationParams fp = solve_st(0.7, -0.8, Branch::mode1, {}, 0.3);
  const Eigen::ArrayXcd f = bump(g);
  const Eigen::ArrayXcd h = (g.nodes.sin().pow(6) * (3.0 * g.nodes).cos()).cast<Complex>();
  CHECK(adjoint_residual(fp, g, f, h) < 1e-8);
  CHECK(std::abs(ladder_pairing(f, h, g) - ladder_pairing(h, f, g)) < 1e-15);
  CHECK(l2_norm(Eigen::ArrayXcd::Zero(g.interior_size()), g) == 0.0);
}
