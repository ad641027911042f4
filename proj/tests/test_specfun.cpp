#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "curved_mie/specfun.hpp"

using namespace curved_mie;
using cd = std::complex<double>;

namespace {

const ComplexJacobiParams kLegendre{0.0, 0.0};

// Legendre P_n by Bonnet's recurrence, written independently of the Jacobi code.
double bonnet(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return p0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double binom_real(double top, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (top - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("low degree values") {
  const ComplexJacobiParams jp{{0.3, -1.0}, {2.0, 0.5}};
  CHECK(jacobi_eval(0, jp, cd(0.7, 0.2)) == cd(1.0));
  CHECK(std::abs(jacobi_eval(1, kLegendre, cd(0.3)) - 0.3) < 1e-15);
  CHECK(std::abs(jacobi_eval(2, kLegendre, cd(0.5)) - (-0.125)) < 1e-15);
  CHECK(jacobi_ode_residual(0, jp, cd(0.4)) == 0.0);
  CHECK(jacobi_ode_residual(2, kLegendre, cd(0.5)) < 1e-12);
}

TEST_CASE("normalization P_n(1) = C(n + a, n)") {
  for (double a : {0.0, 0.5, 1.7, -0.3})
    for (int n = 0; n <= 8; ++n) {
      const JacobiParams<double> jp{a, 0.9};
      CHECK(jacobi_eval(n, jp, 1.0) == doctest::Approx(binom_real(n + a, n)).epsilon(1e-12));
    }
}

TEST_CASE("Legendre special case at 20 points") {
  for (int i = 0; i < 20; ++i) {
    const double x = -0.95 + 0.1 * i;
    for (int n = 0; n <= 12; ++n) {
      CHECK(std::abs(jacobi_eval(n, kLegendre, cd(x)) - bonnet(n, x)) < 1e-12);
      CHECK(std::abs(jacobi_eval(n, JacobiParams<double>{0.0, 0.0}, x) - std::legendre(n, x)) <
            1e-12);
    }
  }
}

TEST_CASE("Chebyshev special case a = b = -1/2") {
  // P_n^{(-1/2,-1/2)}(x) = C(2n, n) 4^{-n} T_n(x)
  const JacobiParams<double> jp{-0.5, -0.5};
  for (int n = 0; n <= 10; ++n) {
    const double scale = binom_real(2.0 * n, n) / std::pow(4.0, n);
    for (int i = 0; i < 20; ++i) {
      const double x = -0.97 + 0.1 * i;
      CHECK(std::abs(jacobi_eval(n, jp, x) - scale * std::cos(n * std::acos(x))) < 1e-10);
    }
  }
}

TEST_CASE("derivative identity") {
  CHECK(jacobi_deriv(0, kLegendre, cd(0.3)) == cd(0.0));
  for (double z : {-0.7, 0.0, 0.4}) CHECK(std::abs(jacobi_deriv(1, kLegendre, cd(z)) - 1.0) < 1e-15);
  const double h = 1e-5;
  const cd z0(0.2);
  const cd fd = (jacobi_eval(3, kLegendre, z0 + h) - jacobi_eval(3, kLegendre, z0 - h)) / (2 * h);
  CHECK(std::abs(fd - jacobi_deriv(3, kLegendre, z0)) < 1e-8);

  const ComplexJacobiParams jp{{1.2, 0.4}, {-0.6, 1.1}};
  for (int n = 1; n <= 10; ++n) {
    const cd z(0.3, -0.4);
    const double hh = 1e-3;
    const cd five = (jacobi_eval(n, jp, z - 2 * hh) - 8.0 * jacobi_eval(n, jp, z - hh) +
                     8.0 * jacobi_eval(n, jp, z + hh) - jacobi_eval(n, jp, z + 2 * hh)) /
                    (12 * hh);
    const cd exact = jacobi_deriv(n, jp, z);
    CHECK(std::abs(five - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("ODE residual over random complex draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  double worst = 0.0;
  while (done < 200) {
    const cd a(3.5 * u(rng), 3.5 * u(rng));
    const cd b(3.5 * u(rng), 3.5 * u(rng));
    const cd z(1.4 * u(rng), 1.4 * u(rng));
    const int n = int(13 * (0.5 + 0.5 * u(rng))) % 13;
    try {
      worst = std::max(worst, jacobi_ode_residual(n, ComplexJacobiParams{a, b}, z));
      ++done;
    } catch (const ParameterError&) {
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("degree is exactly n") {
  // Newton divided differences over n + 2 nodes: order n+1 vanishes, order n does not.
  const ComplexJacobiParams jp{{0.4, 0.3}, {1.5, -0.2}};
  for (int n = 1; n <= 8; ++n) {
    const int k = n + 2;
    std::vector<cd> x(k), f(k);
    for (int i = 0; i < k; ++i) {
      x[i] = cd(-1.0 + 2.0 * i / (k - 1), 0.1 * i);
      f[i] = jacobi_eval(n, jp, x[i]);
    }
    std::vector<cd> d = f;
    std::vector<cd> lead(k);
    lead[0] = d[0];
    for (int order = 1; order < k; ++order) {
      for (int i = k - 1; i >= order; --i) d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - order]);
      lead[order] = d[order];
    }
    CHECK(std::abs(lead[n + 1]) < 1e-10 * std::abs(lead[n]));
    CHECK(std::abs(lead[n]) > 1e-6);
  }
}

TEST_CASE("homogeneous form agrees with w^n P_n(x/w)") {
  const ComplexJacobiParams jp{{-1.3, -0.8}, {-1.3, 0.8}};
  for (int n = 0; n <= 6; ++n)
    for (double w : {0.3, 0.9, 1.0}) {
      const cd x(0.0, -0.7);
      const cd expect = std::pow(cd(w), n) * jacobi_eval(n, jp, x / w);
      CHECK(std::abs(jacobi_eval_homogeneous(n, jp, x, cd(w)) - expect) <=
            1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("degenerate denominator names the degree") {
  // a + b = -3 makes 2k + a + b - 2 vanish at k = 2 (after the k(k+a+b) factor is nonzero)
  const JacobiParams<double> jp{-1.0, -2.0};
  try {
    jacobi_eval(3, jp, 0.3);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("n = ") != std::string::npos);
  }
}
