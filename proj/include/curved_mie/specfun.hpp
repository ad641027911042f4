#pragma once

// Jacobi polynomials P_n^{(a,b)}(z) for complex parameters and argument.
//
// Normalization: P_n(1) = binom(n + a, n). Evaluation is the forward
// three-term recurrence in the degree,
//
//   2k (k+a+b) (2k+a+b-2) P_k = (2k+a+b-1) [ (2k+a+b)(2k+a+b-2) z + a^2 - b^2 ] P_{k-1}
//                               - 2 (k+a-1)(k+b-1)(2k+a+b) P_{k-2},
//
// seeded with P_0 = 1 and P_1 = (a-b)/2 + (a+b+2) z / 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "curved_mie/errors.hpp"

namespace curved_mie {

template <typename Scalar>
struct JacobiParams {
  Scalar a{};
  Scalar b{};
};

using ComplexJacobiParams = JacobiParams<std::complex<double>>;

namespace detail {

template <typename Scalar>
double magnitude(const Scalar& x) {
  using std::abs;
  return abs(x);
}

}  // namespace detail

/// Homogeneous form w^n P_n(x / w). Bounded where P_n(x/w) alone would
/// overflow (w -> 0 with x fixed), and equal to P_n(z) for w = 1, x = z.
template <typename Scalar>
Scalar jacobi_eval_homogeneous(int n, const JacobiParams<Scalar>& jp, Scalar x, Scalar w) {
  if (n < 0) throw ParameterError("jacobi: degree must be >= 0");
  const Scalar a = jp.a;
  const Scalar b = jp.b;
  if (n == 0) return Scalar(1);

  Scalar q_prev = Scalar(1);
  Scalar q = (a - b) / Scalar(2) * w + (a + b + Scalar(2)) / Scalar(2) * x;
  const Scalar w2 = w * w;
  for (int k = 2; k <= n; ++k) {
    const Scalar kk = Scalar(double(k));
    const Scalar c = Scalar(2) * kk + a + b;
    const Scalar denom = Scalar(2) * kk * (kk + a + b) * (c - Scalar(2));
    if (detail::magnitude(denom) < 1e-300 ||
        detail::magnitude(denom) < 1e-14 * (1.0 + detail::magnitude(c * c * kk)))
      throw ParameterError("jacobi: degenerate recurrence denominator at n = " +
                           std::to_string(k) + " (a + b = " +
                           std::to_string(detail::magnitude(a + b)) + " in magnitude)");
    const Scalar lead = (c - Scalar(1)) * c * (c - Scalar(2));
    const Scalar shift = (c - Scalar(1)) * (a * a - b * b);
    const Scalar tail = Scalar(2) * (kk + a - Scalar(1)) * (kk + b - Scalar(1)) * c;
    const Scalar next = ((lead * x + shift * w) * q - tail * w2 * q_prev) / denom;
    q_prev = q;
    q = next;
  }
  return q;
}

template <typename Scalar>
Scalar jacobi_eval(int n, const JacobiParams<Scalar>& jp, Scalar z) {
  return jacobi_eval_homogeneous(n, jp, z, Scalar(1));
}

/// d/dz P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}.
template <typename Scalar>
Scalar jacobi_deriv(int n, const JacobiParams<Scalar>& jp, Scalar z) {
  if (n < 0) throw ParameterError("jacobi: degree must be >= 0");
  if (n == 0) return Scalar(0);
  const JacobiParams<Scalar> shifted{jp.a + Scalar(1), jp.b + Scalar(1)};
  return (Scalar(double(n)) + jp.a + jp.b + Scalar(1)) / Scalar(2) *
         jacobi_eval(n - 1, shifted, z);
}

template <typename Scalar>
Scalar jacobi_second_deriv(int n, const JacobiParams<Scalar>& jp, Scalar z) {
  if (n < 2) return Scalar(0);
  const JacobiParams<Scalar> shifted{jp.a + Scalar(1), jp.b + Scalar(1)};
  return (Scalar(double(n)) + jp.a + jp.b + Scalar(1)) / Scalar(2) *
         jacobi_deriv(n - 1, shifted, z);
}

/// Residual of the Jacobi equation
///   (1 - z^2) y'' + (b - a - (a + b + 2) z) y' + n (n + a + b + 1) y
/// at y = P_n, divided by the largest of the three term magnitudes (or 1 if
/// all vanish). Exactly zero in exact arithmetic.
template <typename Scalar>
double jacobi_ode_residual(int n, const JacobiParams<Scalar>& jp, Scalar z) {
  if (n == 0) return 0.0;
  const Scalar y = jacobi_eval(n, jp, z);
  const Scalar dy = jacobi_deriv(n, jp, z);
  const Scalar d2y = jacobi_second_deriv(n, jp, z);
  const Scalar t2 = (Scalar(1) - z * z) * d2y;
  const Scalar t1 = (jp.b - jp.a - (jp.a + jp.b + Scalar(2)) * z) * dy;
  const Scalar t0 = Scalar(double(n)) * (Scalar(double(n)) + jp.a + jp.b + Scalar(1)) * y;
  const double scale = std::max({detail::magnitude(t2), detail::magnitude(t1),
                                 detail::magnitude(t0)});
  const double raw = detail::magnitude(t2 + t1 + t0);
  return scale > 0.0 ? raw / scale : raw;
}

}  // namespace curved_mie
