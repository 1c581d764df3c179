#include "bingham/cholesky.hpp"

#include <Eigen/SparseCholesky>

#include "bingham/common.hpp"

namespace bingham {

struct SparseCholesky::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

SparseCholesky::SparseCholesky(const SparseMatrix& A) : impl_(std::make_unique<Impl>()), n_(A.rows()) {
  if (A.rows() != A.cols()) throw InvalidArgument("SparseCholesky: matrix is not square");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.nnz());
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_index();
  const auto& v = A.values();
  for (int i = 0; i < A.rows(); ++i)
    for (int k = rp[i]; k < rp[i + 1]; ++k) trip.emplace_back(i, ci[k], v[k]);
  Eigen::SparseMatrix<double> M(n_, n_);
  M.setFromTriplets(trip.begin(), trip.end());
  impl_->ldlt.compute(M);
  if (impl_->ldlt.info() != Eigen::Success) throw InvalidArgument("SparseCholesky: factorization failed");
  const auto d = impl_->ldlt.vectorD();
  for (int i = 0; i < n_; ++i)
    if (!(d[i] > 0.0)) throw InvalidArgument("SparseCholesky: matrix is not positive definite");
}

SparseCholesky::~SparseCholesky() = default;
SparseCholesky::SparseCholesky(SparseCholesky&&) noexcept = default;
SparseCholesky& SparseCholesky::operator=(SparseCholesky&&) noexcept = default;

std::vector<double> SparseCholesky::solve(std::span<const double> b) const {
  if (static_cast<int>(b.size()) != n_) throw InvalidArgument("SparseCholesky: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXd> bv(b.data(), n_);
  const Eigen::VectorXd x = impl_->ldlt.solve(bv);
  return std::vector<double>(x.data(), x.data() + n_);
}

}  // namespace bingham
