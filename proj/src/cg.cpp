#include "bingham/cg.hpp"

#include <cmath>
#include <string>

#include "bingham/common.hpp"

namespace bingham {

CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, const CgConfig& cfg,
                  std::span<const double> x0) {
  const int n = A.rows();
  if (A.cols() != n || static_cast<int>(b.size()) != n)
    throw InvalidArgument("cg_solve: dimension mismatch");
  if (!x0.empty() && static_cast<int>(x0.size()) != n)
    throw InvalidArgument("cg_solve: initial guess has the wrong length");
  if (!(cfg.rel_tol > 0.0)) throw InvalidArgument("cg_solve: rel_tol must be positive");
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * std::max(n, 1);

  CgResult res;
  res.x.assign(n, 0.0);
  if (!x0.empty()) std::copy(x0.begin(), x0.end(), res.x.begin());

  std::vector<double> inv_diag(n, 1.0);
  if (cfg.preconditioner == Preconditioner::Jacobi) {
    const auto d = A.diagonal();
    for (int i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) throw InvalidArgument("cg_solve: non-positive diagonal entry");
      inv_diag[i] = 1.0 / d[i];
    }
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  A.multiply(res.x, ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  const double bnorm = norm2(b);
  const double target = cfg.rel_tol * bnorm;
  // Energy 0.5 x^T A x - b^T x = -0.5 (x^T r + x^T b) with r = b - A x.
  auto energy = [&] { return -0.5 * (dot(res.x, r) + dot(res.x, b)); };

  double rnorm = norm2(r);
  res.residual_history.push_back(rnorm);
  res.energy_history.push_back(energy());
  if (bnorm == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    res.residual = 0.0;
    return res;
  }
  if (rnorm <= target) {
    res.residual = rnorm;
    return res;
  }

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    A.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw InvalidArgument("cg_solve: matrix is not positive definite");
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    rnorm = norm2(r);
    res.iterations = it;
    res.residual_history.push_back(rnorm);
    res.energy_history.push_back(res.energy_history.back() - 0.5 * rz * rz / pap);
    if (rnorm <= target) {
      res.residual = rnorm;
      return res;
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw IterationLimitError("cg_solve: no convergence after " + std::to_string(max_iter) + " iterations",
                            max_iter, rnorm);
}

}  // namespace bingham
