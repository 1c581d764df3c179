#include "bingham/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "bingham/common.hpp"

namespace bingham {

SparseMatrix::SparseMatrix(int nrows, int ncols, std::vector<int> row_ptr, std::vector<int> cols,
                           std::vector<double> values)
    : nrows_(nrows), ncols_(ncols), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)),
      values_(std::move(values)) {
  if (nrows_ < 0 || ncols_ < 0) throw InvalidArgument("SparseMatrix: negative dimension");
  if (static_cast<int>(row_ptr_.size()) != nrows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != static_cast<int>(cols_.size()) || cols_.size() != values_.size())
    throw InvalidArgument("SparseMatrix: inconsistent storage");
  for (int i = 0; i < nrows_; ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (cols_[k] < 0 || cols_[k] >= ncols_) throw InvalidArgument("SparseMatrix: column out of range");
      if (k > row_ptr_[i] && cols_[k] <= cols_[k - 1])
        throw InvalidArgument("SparseMatrix: columns not strictly increasing");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(int nrows, int ncols, std::vector<Triplet> entries) {
  for (const auto& t : entries)
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw InvalidArgument("SparseMatrix: triplet index out of range");
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> row_ptr(nrows + 1, 0);
  std::vector<int> cols;
  std::vector<double> vals;
  cols.reserve(entries.size() / 2);
  vals.reserve(entries.size() / 2);
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col)
      sum += entries[j++].value;
    cols.push_back(entries[i].col);
    vals.push_back(sum);
    ++row_ptr[entries[i].row + 1];
    i = j;
  }
  for (int r = 0; r < nrows; ++r) row_ptr[r + 1] += row_ptr[r];
  return SparseMatrix(nrows, ncols, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<int> rp(n + 1), cols(n);
  for (int i = 0; i <= n; ++i) rp[i] = i;
  for (int i = 0; i < n; ++i) cols[i] = i;
  return SparseMatrix(n, n, std::move(rp), std::move(cols), std::vector<double>(n, 1.0));
}

double SparseMatrix::at(int i, int j) const {
  const auto begin = cols_.begin() + row_ptr_[i];
  const auto end = cols_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[it - cols_.begin()] : 0.0;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(std::min(nrows_, ncols_), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i) d[i] = at(i, i);
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<int> rp(ncols_ + 1, 0);
  for (int c : cols_) ++rp[c + 1];
  for (int c = 0; c < ncols_; ++c) rp[c + 1] += rp[c];
  std::vector<int> next(rp.begin(), rp.end() - 1);
  std::vector<int> cols(cols_.size());
  std::vector<double> vals(values_.size());
  for (int i = 0; i < nrows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int dst = next[cols_[k]]++;
      cols[dst] = i;
      vals[dst] = values_[k];
    }
  return SparseMatrix(ncols_, nrows_, std::move(rp), std::move(cols), std::move(vals));
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != ncols_ || static_cast<int>(y.size()) != nrows_)
    throw InvalidArgument("SparseMatrix::multiply: dimension mismatch");
  for (int i = 0; i < nrows_; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(nrows_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nrows_) throw InvalidArgument("SparseMatrix: dimension mismatch");
  std::vector<double> y(ncols_, 0.0);
  for (int i = 0; i < nrows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[cols_[k]] += values_[k] * x[i];
  return y;
}

double SparseMatrix::asymmetry() const {
  if (nrows_ != ncols_) throw InvalidArgument("SparseMatrix::asymmetry: matrix is not square");
  double worst = 0.0;
  for (int i = 0; i < nrows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - at(cols_[k], i)));
  return worst;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace bingham
