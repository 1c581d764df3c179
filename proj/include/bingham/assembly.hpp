#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "bingham/cg.hpp"
#include "bingham/space.hpp"
#include "bingham/sparse.hpp"

namespace bingham {

/// Coefficients of a velocity-space function.
struct ScalarField {
  std::shared_ptr<const FeSpace> space;
  std::vector<double> coeffs;
};

/// Coefficients of a multiplier-space function (2 per scalar dof, interleaved).
/// `admissible` certifies |value| <= 1 + 1e-12 at every Lagrange node.
struct VectorField {
  std::shared_ptr<const FeSpace> space;
  std::vector<double> coeffs;
  bool admissible = false;
};

using ScalarFunction = std::function<double(Point)>;

/// A_ij = (mu grad phi_j, grad phi_i).
SparseMatrix assemble_stiffness(const FeSpace& space, double mu);
/// b_i = (f, phi_i).
std::vector<double> assemble_load(const FeSpace& space, const ScalarFunction& f);
/// B_{i, 2j+c} = (d phi_i / d x_c, psi_j): velocity rows, multiplier columns.
SparseMatrix assemble_coupling(const FeSpace& v_space, const FeSpace& q_space);
/// Vector-valued L2 mass matrix of the multiplier space (interleaved components).
SparseMatrix assemble_multiplier_mass(const FeSpace& q_space);

/// Symmetric elimination of homogeneous Dirichlet dofs: rows and columns
/// zeroed, unit diagonal, zero right-hand side.
std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(const SparseMatrix& A, std::span<const double> b,
                                                             const FeSpace& space);

/// L2 projection of velocity gradients onto the multiplier space. Discontinuous
/// spaces are inverted element by element; the continuous MINI multiplier uses
/// a global Jacobi-CG solve with the consistent mass matrix.
class GradientProjector {
 public:
  GradientProjector(std::shared_ptr<const FeSpace> v_space, std::shared_ptr<const FeSpace> q_space);

  /// Coefficients of pi_h grad u. `guess` warm-starts the global solve.
  std::vector<double> apply(std::span<const double> u, std::span<const double> guess = {}) const;
  /// Projection of an arbitrary multiplier-space field's L2 pairing vector
  /// r_j = (w, psi_j) back onto the space (M^{-1} r).
  std::vector<double> solve_mass(std::span<const double> rhs, std::span<const double> guess = {}) const;

  const SparseMatrix& coupling() const { return coupling_; }
  const SparseMatrix& mass() const { return mass_; }
  const std::shared_ptr<const FeSpace>& q_space() const { return q_space_; }

 private:
  std::shared_ptr<const FeSpace> v_space_;
  std::shared_ptr<const FeSpace> q_space_;
  SparseMatrix coupling_;
  SparseMatrix mass_;
  // Discontinuous case: per-cell inverse of the scalar mass block.
  std::vector<double> local_inverse_mass_;
};

VectorField project_gradient(const ScalarField& u, std::shared_ptr<const FeSpace> q_space);

/// Values and gradients of a velocity field at a reference point of a cell.
struct FieldEval {
  double value = 0.0;
  std::array<double, 2> grad{0.0, 0.0};
};
FieldEval eval_field(const ScalarField& u, int tri, RefPoint p);
/// Multiplier value at a reference point of a cell.
Point eval_multiplier(const VectorField& lam, int tri, RefPoint p);

/// Inverse of a small dense symmetric positive definite matrix (row-major n x n).
std::vector<double> invert_spd(std::span<const double> a, int n);

}  // namespace bingham
