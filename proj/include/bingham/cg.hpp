#pragma once

#include <span>
#include <vector>

#include "bingham/sparse.hpp"

namespace bingham {

enum class Preconditioner { None, Jacobi };

struct CgConfig {
  double rel_tol = 1e-10;
  /// Non-positive means 10 * n.
  int max_iter = 0;
  Preconditioner preconditioner = Preconditioner::Jacobi;
};

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  /// Final ||b - A x||_2.
  double residual = 0.0;
  /// ||r_k||_2 for k = 0..iterations.
  std::vector<double> residual_history;
  /// Energy functional 0.5 x^T A x - b^T x at each iterate; non-increasing.
  std::vector<double> energy_history;
};

/// Preconditioned conjugate gradients for symmetric positive definite A.
/// Stops once ||b - A x||_2 <= rel_tol * ||b||_2; throws IterationLimitError
/// when max_iter is reached first.
CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, const CgConfig& cfg = {},
                  std::span<const double> x0 = {});

}  // namespace bingham
