#include "curved_mie/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace curved_mie {

std::pair<double, double> TridiagonalOperator::spectrum_bounds() const {
  const Eigen::Index n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off_diagonal(i - 1));
    if (i + 1 < n) r += std::abs(off_diagonal(i));
    lo = std::min(lo, diagonal(i) - r);
    hi = std::max(hi, diagonal(i) + r);
  }
  return {lo, hi};
}

double TridiagonalOperator::norm_bound() const {
  const auto [lo, hi] = spectrum_bounds();
  return std::max(std::abs(lo), std::abs(hi));
}

Eigen::ArrayXd TridiagonalOperator::apply(const Eigen::ArrayXd& v) const {
  Eigen::ArrayXd out = diagonal * v;
  const Eigen::Index n = size();
  out.head(n - 1) += off_diagonal * v.tail(n - 1);
  out.tail(n - 1) += off_diagonal * v.head(n - 1);
  return out;
}

TridiagonalOperator assemble_curved(const PhysicalParams& p, int m, int N) {
  if (N < 64 || N % 2 != 0) throw ParameterError("assemble_curved: N must be even and >= 64");
  p.validate();
  TridiagonalOperator op;
  op.grid = Grid::sphere(N);
  op.scale = p.energy_scale();
  const double h = op.grid.h;
  const double cm = double(m) * (m + 1);
  const Eigen::ArrayXd& psi = op.grid.nodes;
  op.diagonal.resize(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double s = std::sin(psi(i));
    op.diagonal(i) = op.scale * (2.0 / (h * h) + cm / (s * s) - 1.0) + v_curved(psi(i), p);
  }
  op.off_diagonal = Eigen::ArrayXd::Constant(psi.size() - 1, -op.scale / (h * h));
  return op;
}

TridiagonalOperator assemble_flat(const PhysicalParams& p, int m, int N, double r_max) {
  if (N < 64) throw ParameterError("assemble_flat: N must be >= 64");
  p.validate();
  TridiagonalOperator op;
  op.grid = Grid::radial(N, r_max);
  op.scale = p.hbar * p.hbar / (2.0 * p.mu);
  const double h = op.grid.h;
  const double cm = double(m) * (m + 1);
  const Eigen::ArrayXd& r = op.grid.nodes;
  op.diagonal.resize(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i)
    op.diagonal(i) = op.scale * (2.0 / (h * h) + cm / (r(i) * r(i))) + v_flat(r(i), p);
  op.off_diagonal = Eigen::ArrayXd::Constant(r.size() - 1, -op.scale / (h * h));
  return op;
}

int sturm_count(const TridiagonalOperator& op, double lambda) {
  const Eigen::Index n = op.size();
  const double pivmin = std::numeric_limits<double>::min() /
                        std::numeric_limits<double>::epsilon() *
                        std::max(1.0, op.norm_bound());
  int count = 0;
  double d = op.diagonal(0) - lambda;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    if (i + 1 == n) break;
    const double b = op.off_diagonal(i);
    d = (op.diagonal(i + 1) - lambda) - b * b / d;
  }
  return count;
}

namespace {

double bisect(const TridiagonalOperator& op, int index, double lo, double hi, double tol) {
  // invariant: count(lo) <= index < count(hi)
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(op, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EigenResult lowest_k(const TridiagonalOperator& op, int k, double tol) {
  if (k < 1 || 4 * k >= op.size() + 1)
    throw ParameterError("lowest_k: need 1 <= k < N/4");
  if (!(tol > 0.0)) throw ParameterError("lowest_k: tol must be > 0");
  auto [glo, ghi] = op.spectrum_bounds();
  glo -= 1.0;
  // Shrink the upper end: find hi with at least k eigenvalues below it.
  double span = 1.0;
  double hi = glo + span;
  while (sturm_count(op, hi) < k && hi < ghi) {
    span *= 2.0;
    hi = std::min(glo + span, ghi + 1.0);
  }
  EigenResult res;
  res.grid_size = op.grid.n_points;
  for (int i = 0; i < k; ++i) res.eigenvalues.push_back(bisect(op, i, glo, hi, tol));
  return res;
}

namespace {

// LU with partial pivoting for a general tridiagonal system (LAPACK gttrf/gttrs).
struct TridiagonalLU {
  Eigen::ArrayXd dl, d, du, du2;
  std::vector<int> ipiv;
  bool singular = false;

  TridiagonalLU(const Eigen::ArrayXd& sub, const Eigen::ArrayXd& diag, const Eigen::ArrayXd& sup)
      : dl(sub), d(diag), du(sup), du2(Eigen::ArrayXd::Zero(std::max<Eigen::Index>(diag.size() - 2, 0))),
        ipiv(diag.size()) {
    const Eigen::Index n = d.size();
    for (Eigen::Index i = 0; i < n; ++i) ipiv[i] = int(i);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d(i)) >= std::abs(dl(i))) {
        if (d(i) == 0.0) {
          singular = true;
          return;
        }
        const double f = dl(i) / d(i);
        dl(i) = f;
        d(i + 1) -= f * du(i);
        if (i + 2 < n) du2(i) = 0.0;
      } else {
        const double f = d(i) / dl(i);
        d(i) = dl(i);
        dl(i) = f;
        const double tmp = du(i);
        du(i) = d(i + 1);
        d(i + 1) = tmp - f * d(i + 1);
        if (i + 2 < n) {
          du2(i) = du(i + 1);
          du(i + 1) = -f * du(i + 1);
        }
        ipiv[i] = int(i + 1);
      }
    }
    if (d(n - 1) == 0.0) singular = true;
  }

  Eigen::ArrayXd solve(Eigen::ArrayXd b) const {
    const Eigen::Index n = d.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (ipiv[i] == i) {
        b(i + 1) -= dl(i) * b(i);
      } else {
        const double tmp = b(i);
        b(i) = b(i + 1);
        b(i + 1) = tmp - dl(i) * b(i);
      }
    }
    b(n - 1) /= d(n - 1);
    if (n > 1) b(n - 2) = (b(n - 2) - du(n - 2) * b(n - 1)) / d(n - 2);
    for (Eigen::Index i = n - 3; i >= 0; --i)
      b(i) = (b(i) - du(i) * b(i + 1) - du2(i) * b(i + 2)) / d(i);
    return b;
  }
};

void fix_sign_and_norm(Eigen::ArrayXd& v, double h) {
  v /= std::sqrt(v.square().sum() * h);
  const double big = v.abs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-3 * big) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
}

}  // namespace

Eigen::ArrayXd eigenvector(const TridiagonalOperator& op, double eigenvalue, double tol) {
  const Eigen::Index n = op.size();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::ArrayXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = uni(rng);

  double shift = eigenvalue;
  const double nudge = std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * op.norm_bound());
  for (int attempt = 0; attempt <= 5; ++attempt) {
    TridiagonalLU lu(op.off_diagonal, op.diagonal - shift, op.off_diagonal);
    if (lu.singular) {
      shift += nudge;
      continue;
    }
    Eigen::ArrayXd v = start;
    bool finite = true;
    for (int it = 0; it < 4; ++it) {
      v = lu.solve(v);
      const double mx = v.abs().maxCoeff();
      if (!std::isfinite(mx) || mx == 0.0) {
        finite = false;
        break;
      }
      v /= mx;
    }
    if (!finite) {
      shift += nudge;
      continue;
    }
    fix_sign_and_norm(v, op.grid.h);
    return v;
  }
  throw NumericalError("eigenvector: inverse iteration broke down after 5 shift perturbations");
}

EigenResult extrapolate(const EigenResult& coarse, const EigenResult& fine) {
  if (coarse.eigenvalues.size() != fine.eigenvalues.size())
    throw ParameterError("extrapolate: mismatched eigenvalue counts");
  EigenResult out;
  out.grid_size = fine.grid_size;
  out.extrapolated = true;
  for (std::size_t i = 0; i < fine.eigenvalues.size(); ++i) {
    const double c = coarse.eigenvalues[i];
    const double f = fine.eigenvalues[i];
    out.eigenvalues.push_back(c == f ? f : (4.0 * f - c) / 3.0);
  }
  return out;
}

EigenResult solve_curved(const PhysicalParams& p, int m, int N, int k, double tol) {
  const EigenResult coarse = lowest_k(assemble_curved(p, m, N), k, tol);
  const EigenResult fine = lowest_k(assemble_curved(p, m, 2 * N), k, tol);
  return extrapolate(coarse, fine);
}

EigenResult solve_flat(const PhysicalParams& p, int m, int N, double r_max, int k, double tol) {
  const TridiagonalOperator op = assemble_flat(p, m, N, r_max);
  EigenResult res = lowest_k(op, k, tol);
  for (double lambda : res.eigenvalues) res.eigenvectors.push_back(eigenvector(op, lambda, tol));
  const double amp = truncation_amplitude(res);
  if (amp > 1e-10)
    res.warnings.push_back("flat oracle truncated: boundary amplitude " + std::to_string(amp) +
                           " at r_max = " + std::to_string(r_max));
  return res;
}

double truncation_amplitude(const EigenResult& res) {
  double worst = 0.0;
  for (const Eigen::ArrayXd& v : res.eigenvectors)
    worst = std::max(worst, std::abs(v(v.size() - 1)) / v.abs().maxCoeff());
  return worst;
}

}  // namespace curved_mie
