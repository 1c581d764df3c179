#pragma once

#include <span>
#include <vector>

namespace bingham {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed-row matrix with sorted, duplicate-free column indices per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int nrows, int ncols, std::vector<int> row_ptr, std::vector<int> cols,
               std::vector<double> values);

  /// Duplicates are summed in a fixed order, so equal input gives bitwise-equal output.
  static SparseMatrix from_triplets(int nrows, int ncols, std::vector<Triplet> entries);
  static SparseMatrix identity(int n);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  int nnz() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_index() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  /// Entry (i, j), zero if not stored.
  double at(int i, int j) const;
  std::vector<double> diagonal() const;
  SparseMatrix transpose() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  /// y = A^T x
  std::vector<double> multiply_transpose(std::span<const double> x) const;

  /// Largest |A_ij - A_ji|.
  double asymmetry() const;

 private:
  int nrows_ = 0;
  int ncols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace bingham
