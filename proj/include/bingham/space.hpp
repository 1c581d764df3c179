#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bingham/basis.hpp"
#include "bingham/mesh.hpp"

namespace bingham {

enum class FamilyTag { P2P0, P3P1, MINI };

/// Velocity / multiplier pairing.
struct ElementFamily {
  FamilyTag tag = FamilyTag::P2P0;
  int velocity_degree = 2;
  int multiplier_degree = 0;
  bool multiplier_continuous = false;

  static ElementFamily from_tag(FamilyTag tag);
  /// Accepts "p2p0", "p3p1", "mini" (case-insensitive).
  static ElementFamily parse(const std::string& name);
  std::string name() const;
  BasisKind velocity_basis() const;
  BasisKind multiplier_basis() const;
};

enum class Role { Velocity, Multiplier };

/// Degree-of-freedom map binding a basis to a mesh. Velocity spaces are scalar
/// and H1-conforming; multiplier spaces are two-component vector fields whose
/// coefficient for scalar dof j and component c sits at index 2*j + c.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, ElementFamily family, Role role);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const ElementFamily& family() const { return family_; }
  Role role() const { return role_; }
  BasisKind basis() const { return basis_; }
  bool continuous() const { return continuous_; }
  int components() const { return role_ == Role::Multiplier ? 2 : 1; }

  /// Number of scalar Lagrange dofs.
  int num_scalar_dofs() const { return num_scalar_; }
  /// Total number of coefficients (scalar dofs times components).
  int ndof() const { return num_scalar_ * components(); }
  int dofs_per_cell() const { return local_size_; }

  std::span<const int> cell_dofs(int tri) const {
    return {cell_dofs_.data() + static_cast<std::size_t>(tri) * local_size_,
            static_cast<std::size_t>(local_size_)};
  }
  const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }
  bool is_boundary_dof(int d) const { return !is_boundary_.empty() && is_boundary_[d] != 0; }
  /// Physical location of each scalar dof's Lagrange node.
  const std::vector<Point>& node_coords() const { return node_coords_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  ElementFamily family_;
  Role role_;
  BasisKind basis_;
  bool continuous_;
  int num_scalar_ = 0;
  int local_size_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<int> boundary_dofs_;
  std::vector<char> is_boundary_;
  std::vector<Point> node_coords_;
};

std::shared_ptr<const FeSpace> build_space(std::shared_ptr<const Mesh> mesh, ElementFamily family, Role role);

/// Values and physical gradients of every local basis function of a cell.
struct BasisEval {
  std::vector<double> values;
  std::vector<std::array<double, 2>> gradients;
};

BasisEval eval_basis(const FeSpace& space, int tri, const std::array<double, 3>& barycentric);

}  // namespace bingham
