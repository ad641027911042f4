#pragma once

#include <numbers>

#include <Eigen/Dense>

#include "curved_mie/errors.hpp"

namespace curved_mie {

/// Open uniform grid x_i = i h, i = 1 .. N-1, on [0, N h]. The endpoints are
/// never sampled; boundary values are implied zero (Dirichlet).
struct Grid {
  int n_points = 0;  // N, the number of intervals
  double h = 0.0;
  Eigen::ArrayXd nodes;

  /// psi grid on (0, pi).
  static Grid sphere(int N) { return uniform(N, std::numbers::pi); }

  /// r grid on (0, r_max).
  static Grid radial(int N, double r_max) { return uniform(N, r_max); }

  static Grid uniform(int N, double length) {
    if (N < 4) throw ParameterError("grid needs at least 4 intervals");
    if (!(length > 0.0)) throw ParameterError("grid length must be > 0");
    Grid g;
    g.n_points = N;
    g.h = length / N;
    g.nodes = Eigen::ArrayXd::LinSpaced(N - 1, 1.0, N - 1) * g.h;
    return g;
  }

  Eigen::Index interior_size() const { return nodes.size(); }
};

/// Composite Simpson rule over [0, N h] for samples on the open grid, with the
/// endpoint values taken as zero. N must be even.
inline double simpson(const Eigen::ArrayXd& interior, double h) {
  const Eigen::Index n = interior.size();  // N - 1
  if ((n + 1) % 2 != 0) throw ParameterError("simpson: N must be even");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) sum += (i % 2 == 0 ? 4.0 : 2.0) * interior(i);
  return sum * h / 3.0;
}

}  // namespace curved_mie
