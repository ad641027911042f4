#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "curved_mie/oracle.hpp"
#include "curved_mie/wavefunction.hpp"

using namespace curved_mie;
using cd = std::complex<double>;

namespace {

const PhysicalParams kDefault;

PhysicalParams free_params() {
  PhysicalParams p;
  p.V0 = 0.0;
  return p;
}

}  // namespace

TEST_CASE("normalize is idempotent and removes complex scale") {
  const Grid g = Grid::sphere(2048);
  const Level lv = level(2, 0, kDefault, SolvabilityMode::direct);
  const WaveSample w = normalize(eval_eigenfunction(lv, g));
  CHECK(w.norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sphere_norm(w.values, g) == doctest::Approx(1.0).epsilon(1e-12));

  const WaveSample again = normalize(w);
  CHECK((again.values - w.values).abs().maxCoeff() < 1e-14);

  WaveSample scaled = w;
  scaled.values *= cd(0.0, 3.0);
  scaled.norm = sphere_norm(scaled.values, g);
  CHECK((normalize(scaled).values - w.values).abs().maxCoeff() < 1e-13);

  WaveSample zero = w;
  zero.values.setZero();
  zero.norm = 0.0;
  CHECK_THROWS_AS(normalize(zero), NumericalError);
}

TEST_CASE("substitution maps round trip") {
  const Grid g = Grid::sphere(512);
  const Eigen::ArrayXcd x =
      g.nodes.sin().square().cast<cd>() * (cd(1.0, 0.5) + g.nodes.cos().cast<cd>());
  CHECK((phi_to_psi(psi_to_phi(x, g), g) - x).abs().maxCoeff() < 1e-13);
  for (ExpFactor f : {ExpFactor::real, ExpFactor::printed})
    CHECK((F_to_phi(phi_to_F(x, g, 0.8, f), g, 0.8, f) - x).abs().maxCoeff() < 1e-13);
  CHECK((f_to_F(F_to_f(x, g, -0.7), g, -0.7) - x).abs().maxCoeff() < 1e-12);

  const Eigen::ArrayXcd one = Eigen::ArrayXcd::Ones(g.interior_size());
  CHECK((psi_to_phi(one, g) - g.nodes.sin().cast<cd>()).abs().maxCoeff() < 1e-15);
}

TEST_CASE("eigenfunction reduces to the Jacobi polynomial under the maps") {
  const Grid g = Grid::sphere(256);
  for (int n = 1; n <= 4; ++n) {
    const Level lv = level(n, 1, kDefault, SolvabilityMode::direct);
    const WaveSample w = eval_eigenfunction(lv, g);
    const Eigen::ArrayXcd f = F_to_f(phi_to_F(psi_to_phi(w.values, g), g, lv.alpha), g, lv.beta);
    double worst = 0.0, scale = 0.0;
    for (Eigen::Index i = 20; i < g.interior_size() - 20; ++i) {
      const double psi = g.nodes(i);
      const cd expect = jacobi_eval(n - 1, lv.jacobi, cd(0.0, -1.0 / std::tan(psi)));
      worst = std::max(worst, std::abs(f(i) - expect));
      scale = std::max(scale, std::abs(expect));
    }
    CHECK(worst <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("phi is sin times Psi") {
  const Grid g = Grid::sphere(256);
  const Level lv = level(3, 0, kDefault, SolvabilityMode::direct);
  const Eigen::ArrayXcd phi = eval_phi(lv, g);
  const Eigen::ArrayXcd psi = eval_eigenfunction(lv, g).values;
  CHECK((phi - psi_to_phi(psi, g)).abs().maxCoeff() < 1e-13 * phi.abs().maxCoeff());
}

TEST_CASE("equation residual discriminates the energy") {
  const Grid g = Grid::sphere(4096);
  for (int m : {0, 1})
    for (int n = 1; n <= 3; ++n) {
      const Level lv = level(n, m, kDefault, SolvabilityMode::direct);
      const WaveSample w = normalize(eval_eigenfunction(lv, g));
      const double good = equation_residual(w, lv.energy, kDefault, m, 0.05);
      const double bad = equation_residual(w, lv.energy + 0.1, kDefault, m, 0.05);
      CHECK(good < 1e-4);
      CHECK(bad > 100 * good);
    }
}

TEST_CASE("residual order is about two") {
  const Level lv = level(2, 0, kDefault, SolvabilityMode::direct);
  const double cut = 0.05;
  const double r1 = equation_residual(eval_eigenfunction(lv, Grid::sphere(1024)), lv.energy,
                                      kDefault, 0, cut);
  const double r2 = equation_residual(eval_eigenfunction(lv, Grid::sphere(2048)), lv.energy,
                                      kDefault, 0, cut);
  CHECK(std::log2(r1 / r2) > 1.8);
}

TEST_CASE("endpoint decay follows sin^j") {
  const Grid g = Grid::sphere(8192);
  for (int m : {0, 1})
    for (int n = 1; n <= 3; ++n) {
      const Level lv = level(n, m, kDefault, SolvabilityMode::direct);
      const WaveSample w = normalize(eval_eigenfunction(lv, g));
      // for n > 1 the polynomial factor behaves as sin^{-(n-1)} near the pole
      // and cancels the extra power, leaving sin^j
      CHECK(boundary_decay_exponent(w) == doctest::Approx(lv.j).epsilon(0.05));
      const double bound = 10.0 * std::pow(g.h, std::min(lv.j, 2.0)) * w.values.abs().maxCoeff();
      if (lv.j > 0.0) CHECK(std::abs(w.values(0)) < bound);
    }
}

TEST_CASE("nonpositive power flag") {
  const Grid g = Grid::sphere(256);
  CHECK(eval_eigenfunction(level(1, 0, free_params(), SolvabilityMode::direct), g).nonpositive_power);
  CHECK_FALSE(eval_eigenfunction(level(2, 0, kDefault, SolvabilityMode::direct), g).nonpositive_power);
}

TEST_CASE("orthogonality within a channel") {
  const Grid g = Grid::sphere(8192);
  for (int m : {0, 1}) {
    std::vector<WaveSample> ws;
    for (int n = 1; n <= 3; ++n)
      ws.push_back(normalize(eval_eigenfunction(level(n, m, kDefault, SolvabilityMode::direct), g)));
    for (std::size_t a = 0; a < ws.size(); ++a)
      for (std::size_t b = a + 1; b < ws.size(); ++b)
        CHECK(std::abs(sphere_overlap(ws[a], ws[b])) < 1e-4);
  }
}

TEST_CASE("free ground state is constant and matches the oracle") {
  const int N = 1024;
  const Grid g = Grid::sphere(N);
  const WaveSample w = normalize(eval_eigenfunction(level(1, 0, free_params(), SolvabilityMode::direct), g));
  const double c = 1.0 / std::sqrt(std::numbers::pi / 2);
  CHECK((w.values - cd(c)).abs().maxCoeff() < 1e-12);

  const TridiagonalOperator op = assemble_curved(free_params(), 0, N);
  const EigenResult r = lowest_k(op, 1, 1e-13);
  Eigen::ArrayXd v = eigenvector(op, r.eigenvalues[0]) / g.nodes.sin();
  v /= std::sqrt(simpson(v.square() * g.nodes.sin().square(), g.h));
  CHECK((v - c).abs().maxCoeff() < 1e-6);
}
