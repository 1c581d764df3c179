#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bingham/assembly.hpp"

namespace bingham {

enum class InnerSolver { Cholesky, Cg };

struct BinghamParams {
  double mu = 1.0;
  double g = 0.0;
  ScalarFunction f = [](Point) { return 0.0; };
  double rho = 1.0;
  /// Relative H1-seminorm increment below which the iteration stops.
  double tol = 1e-7;
  int max_uzawa_iter = 100000;
  /// The velocity matrix is factorized once per mesh, or each solve runs
  /// warm-started Jacobi-PCG to relative residual cg_tol.
  InnerSolver inner_solver = InnerSolver::Cholesky;
  double cg_tol = 1e-12;

  void validate() const;
};

/// P(v) = v / max(1, |v|).
Point project_ball(Point v);
/// Applies project_ball to every interleaved (x, y) pair in place.
void project_nodal(std::vector<double>& coeffs);
bool nodally_admissible(const std::vector<double>& coeffs, double slack = 1e-12);

struct UzawaInit {
  std::vector<double> u;
  std::vector<double> lambda;
};

struct UzawaResult {
  ScalarField u;
  VectorField lambda;
  int iterations = 0;
  std::vector<double> increments;
  bool converged = false;
  long cg_iterations = 0;
};

/// Projected Uzawa iteration for the discrete Bingham problem. After the stop
/// test fires, u is re-solved once against the final multiplier, so the pair
/// satisfies the velocity equation to solver precision. Throws
/// NonConvergenceError when max_uzawa_iter is exhausted.
UzawaResult uzawa_solve(std::shared_ptr<const Mesh> mesh, const ElementFamily& family, const BinghamParams& p,
                        const std::optional<UzawaInit>& init = std::nullopt);

}  // namespace bingham
