#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bingham/sparse.hpp"

namespace bingham {

/// Sparse LDL^T factorization (fill-reducing ordering) of a symmetric positive
/// definite matrix, reused across many right-hand sides.
class SparseCholesky {
 public:
  explicit SparseCholesky(const SparseMatrix& A);
  ~SparseCholesky();
  SparseCholesky(SparseCholesky&&) noexcept;
  SparseCholesky& operator=(SparseCholesky&&) noexcept;

  std::vector<double> solve(std::span<const double> b) const;
  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

}  // namespace bingham
