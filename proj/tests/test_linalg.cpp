#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bingham/assembly.hpp"
#include "bingham/cg.hpp"
#include "bingham/cholesky.hpp"
#include "bingham/mesh.hpp"
#include "bingham/sparse.hpp"

using namespace bingham;

namespace {

// Dense row-major Cholesky solve, the reference for the iterative solver.
std::vector<double> dense_cholesky_solve(std::vector<double> a, std::vector<double> b, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    a[j * n + j] = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / a[j * n + j];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= a[i * n + k] * b[k];
    b[i] /= a[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= a[k * n + i] * b[k];
    b[i] /= a[i * n + i];
  }
  return b;
}

SparseMatrix dense_to_sparse(const std::vector<double>& a, int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.push_back({i, j, a[i * n + j]});
  return SparseMatrix::from_triplets(n, n, t);
}

// A = G^T G + I with G random.
std::vector<double> random_spd(int n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  std::vector<double> g(n * n), a(n * n, 0.0);
  for (double& v : g) v = d(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = i == j ? 1.0 : 0.0;
      for (int k = 0; k < n; ++k) s += g[k * n + i] * g[k * n + j];
      a[i * n + j] = s;
    }
  return a;
}

SparseMatrix poisson_matrix(int cells) {
  const auto m = std::make_shared<const Mesh>(generate_square(cells));
  const auto s = build_space(m, ElementFamily::from_tag(FamilyTag::P2P0), Role::Velocity);
  const auto A = assemble_stiffness(*s, 1.0);
  return apply_dirichlet(A, std::vector<double>(A.rows(), 1.0), *s).first;
}

}  // namespace

TEST(Sparse, TripletsSumDuplicatesAndSortColumns) {
  const auto A = SparseMatrix::from_triplets(2, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 0.5}, {1, 1, -1.0}});
  EXPECT_EQ(A.nnz(), 3);
  EXPECT_EQ(A.at(0, 2), 1.5);
  EXPECT_EQ(A.at(0, 1), 0.0);
  EXPECT_EQ(A.col_index()[0], 0);
  EXPECT_EQ(A.col_index()[1], 2);
  const auto y = A * std::vector<double>{1, 2, 3};
  EXPECT_EQ(y[0], 2.0 + 4.5);
  EXPECT_EQ(y[1], -2.0);
  const auto z = A.multiply_transpose(std::vector<double>{1, 1});
  EXPECT_EQ(z, (std::vector<double>{2.0, -1.0, 1.5}));
  EXPECT_EQ(A.transpose().at(2, 0), 1.5);
}

TEST(Cg, IdentityInOneIteration) {
  const auto I = SparseMatrix::identity(7);
  const std::vector<double> b = {1, -2, 3, 0.5, 0, 9, -4};
  const auto r = cg_solve(I, b);
  EXPECT_LE(r.iterations, 1);
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(r.x[i], b[i], 1e-15);
}

TEST(Cg, TwoByTwo) {
  const auto A = dense_to_sparse({2, 1, 1, 2}, 2);
  for (Preconditioner pc : {Preconditioner::None, Preconditioner::Jacobi}) {
    const auto r = cg_solve(A, std::vector<double>{3, 3}, {1e-14, 0, pc});
    EXPECT_NEAR(r.x[0], 1.0, 1e-13);
    EXPECT_NEAR(r.x[1], 1.0, 1e-13);
  }
}

TEST(Cg, MatchesDenseCholeskyOn50x50) {
  std::mt19937 rng(50);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 50;
    const auto a = random_spd(n, rng);
    std::vector<double> b(n);
    for (double& v : b) v = d(rng);
    const auto ref = dense_cholesky_solve(a, b, n);
    const auto A = dense_to_sparse(a, n);
    for (Preconditioner pc : {Preconditioner::None, Preconditioner::Jacobi}) {
      const auto r = cg_solve(A, b, {1e-14, 0, pc});
      for (int i = 0; i < n; ++i) EXPECT_NEAR(r.x[i], ref[i], 1e-8);
    }
    const SparseCholesky chol(A);
    const auto xc = chol.solve(b);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(xc[i], ref[i], 1e-8);
  }
}

TEST(Cg, EnergyNonIncreasingAndResidualRecorded) {
  const auto A = poisson_matrix(6);
  std::vector<double> b(A.rows());
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  for (double& v : b) v = d(rng);
  const auto r = cg_solve(A, b, {1e-12, 0, Preconditioner::Jacobi});
  ASSERT_EQ(static_cast<int>(r.energy_history.size()), r.iterations + 1);
  ASSERT_EQ(static_cast<int>(r.residual_history.size()), r.iterations + 1);
  for (std::size_t k = 1; k < r.energy_history.size(); ++k)
    EXPECT_LE(r.energy_history[k], r.energy_history[k - 1] + 1e-12);
  // Recorded energy agrees with a direct evaluation at the end.
  const auto Ax = A * r.x;
  EXPECT_NEAR(r.energy_history.back(), 0.5 * dot(r.x, Ax) - dot(b, r.x), 1e-10);
  std::vector<double> res(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) res[i] = b[i] - Ax[i];
  EXPECT_LE(norm2(res), 1e-12 * norm2(b) * 1.0001);
}

TEST(Cg, WarmStartWithSolutionTakesZeroIterations) {
  const auto A = dense_to_sparse({4, 1, 1, 3}, 2);
  const std::vector<double> x = {0.25, -1.5};
  const auto b = A * x;
  const auto r = cg_solve(A, b, {1e-10}, x);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.x, x);
}

TEST(Cg, ZeroRightHandSide) {
  const auto r = cg_solve(poisson_matrix(2), std::vector<double>(25, 0.0));
  EXPECT_EQ(r.iterations, 0);
  for (double v : r.x) EXPECT_EQ(v, 0.0);
}

TEST(Cg, Errors) {
  const auto A = dense_to_sparse({2, 1, 1, 2}, 2);
  EXPECT_THROW(cg_solve(A, std::vector<double>{1, 2, 3}), InvalidArgument);
  EXPECT_THROW(cg_solve(A, std::vector<double>{1, 2}, {}, std::vector<double>{1}), InvalidArgument);
  EXPECT_THROW(cg_solve(A, std::vector<double>{1, 2}, {0.0}), InvalidArgument);
  EXPECT_THROW(cg_solve(SparseMatrix::from_triplets(2, 3, {}), std::vector<double>{1, 2}), InvalidArgument);
  const auto big = poisson_matrix(6);
  try {
    cg_solve(big, std::vector<double>(big.rows(), 1.0), {1e-14, 2, Preconditioner::None});
    FAIL() << "expected an iteration limit";
  } catch (const IterationLimitError& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.last_residual(), 0.0);
  }
  // Indefinite matrix is detected.
  EXPECT_THROW(cg_solve(dense_to_sparse({1, 0, 0, -1}, 2), std::vector<double>{1, 1}, {1e-10, 0, Preconditioner::None}),
               InvalidArgument);
}

TEST(Cholesky, AgreesWithCgOnFiniteElementMatrix) {
  const auto A = poisson_matrix(8);
  std::vector<double> b(A.rows());
  for (int i = 0; i < A.rows(); ++i) b[i] = std::sin(0.37 * i);
  const SparseCholesky chol(A);
  EXPECT_EQ(chol.size(), A.rows());
  const auto xc = chol.solve(b);
  const auto xi = cg_solve(A, b, {1e-14}).x;
  for (int i = 0; i < A.rows(); ++i) EXPECT_NEAR(xc[i], xi[i], 1e-10);
}

TEST(Cholesky, RejectsIndefiniteAndBadSizes) {
  EXPECT_THROW(SparseCholesky(dense_to_sparse({1, 2, 2, 1}, 2)), InvalidArgument);
  EXPECT_THROW(SparseCholesky(SparseMatrix::from_triplets(2, 3, {})), InvalidArgument);
  const SparseCholesky c(SparseMatrix::identity(3));
  EXPECT_THROW(c.solve(std::vector<double>{1, 2}), InvalidArgument);
}
