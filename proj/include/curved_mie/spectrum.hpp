#pragma once

// Closed-form bound-state spectrum on S^3.
//
// Three constant sets are carried side by side and arbitrated against the
// finite-difference oracle:
//   paper_literal  j = -1/2 + sqrt(m(m+1) + mu V0 a^2/hbar^2 + 7/4),
//                  E = s [ (n+j)^2 - C3^2 / (4 (n+j)^2) - mu a^2 V0 / hbar^2 - 9/4 ]
//   rederived      j(j+1) = C2 + 2, same energy expression
//   direct         j(j+1) = C2 and constant -1 in place of -9/4, which is what
//                  substituting Psi = phi / sin(psi) into the Schroedinger
//                  equation produces
// with s = hbar^2 / (2 mu R^2) and n = 1, 2, ...

#include <string_view>
#include <vector>

#include "curved_mie/model.hpp"
#include "curved_mie/specfun.hpp"

namespace curved_mie {

enum class SolvabilityMode { paper_literal, rederived, direct };

inline constexpr SolvabilityMode kAllModes[] = {
    SolvabilityMode::paper_literal, SolvabilityMode::rederived, SolvabilityMode::direct};

std::string_view to_string(SolvabilityMode mode);
/// Accepts "paper", "paper_literal", "rederived", "direct".
SolvabilityMode parse_mode(std::string_view text);

struct Level {
  int n = 1;  // radial index, ground state n = 1
  int m = 0;
  double j = 0.0;
  double alpha = 0.0;  // C3 / (n + j)
  double beta = 0.0;   // 1 - (n + j)
  ComplexJacobiParams jacobi;
  double energy = 0.0;
  SolvabilityMode mode = SolvabilityMode::direct;

  double kappa() const { return n + j; }
  /// Degree of the Jacobi polynomial in the eigenfunction.
  int degree() const { return n - 1; }
};

double compute_j(int m, const PhysicalParams& p, SolvabilityMode mode);

Level level(int n, int m, const PhysicalParams& p, SolvabilityMode mode);

struct FlatLimit {
  double paper_literal = 0.0;    // -(mu^2 a^2 V0^2 / hbar^4) / (n+j)^2
  double curvature_limit = 0.0;  // lim_{R->inf} of the level energy: -(mu a^2 V0^2 / (2 hbar^2)) / (n+j)^2
};

FlatLimit flat_limit_energy(int n, double j, const PhysicalParams& p);

/// Levels n = 1..n_max, sorted by energy.
std::vector<Level> enumerate_levels(int n_max, int m, const PhysicalParams& p,
                                    SolvabilityMode mode);

/// |d(d + 2 beta - 1) - beta(1 - beta) - j(j+1)| with d = n - 1.
double quantization_residual(int n, double beta, double j);

}  // namespace curved_mie
