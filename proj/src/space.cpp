#include "bingham/space.hpp"

#include <algorithm>
#include <cctype>

#include "bingham/geometry.hpp"

namespace bingham {

ElementFamily ElementFamily::from_tag(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::P2P0: return {FamilyTag::P2P0, 2, 0, false};
    case FamilyTag::P3P1: return {FamilyTag::P3P1, 3, 1, false};
    case FamilyTag::MINI: return {FamilyTag::MINI, 3, 1, true};
  }
  throw InvalidArgument("unsupported element family");
}

ElementFamily ElementFamily::parse(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "p2p0") return from_tag(FamilyTag::P2P0);
  if (s == "p3p1") return from_tag(FamilyTag::P3P1);
  if (s == "mini") return from_tag(FamilyTag::MINI);
  throw InvalidArgument("unknown element family '" + name + "'");
}

std::string ElementFamily::name() const {
  switch (tag) {
    case FamilyTag::P2P0: return "p2p0";
    case FamilyTag::P3P1: return "p3p1";
    case FamilyTag::MINI: return "mini";
  }
  return "?";
}

BasisKind ElementFamily::velocity_basis() const {
  switch (tag) {
    case FamilyTag::P2P0: return BasisKind::P2;
    case FamilyTag::P3P1: return BasisKind::P3;
    case FamilyTag::MINI: return BasisKind::P1Bubble;
  }
  throw InvalidArgument("unsupported element family");
}

BasisKind ElementFamily::multiplier_basis() const {
  switch (tag) {
    case FamilyTag::P2P0: return BasisKind::P0;
    case FamilyTag::P3P1: return BasisKind::P1;
    case FamilyTag::MINI: return BasisKind::P1;
  }
  throw InvalidArgument("unsupported element family");
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, ElementFamily family, Role role)
    : mesh_(std::move(mesh)), family_(ElementFamily::from_tag(family.tag)), role_(role) {
  if (!mesh_) throw InvalidArgument("build_space: null mesh");
  if (role_ != Role::Velocity && role_ != Role::Multiplier)
    throw InvalidArgument("build_space: unsupported role");
  basis_ = role_ == Role::Velocity ? family_.velocity_basis() : family_.multiplier_basis();
  continuous_ = role_ == Role::Velocity || family_.multiplier_continuous;
  local_size_ = basis_size(basis_);

  const Mesh& m = *mesh_;
  const int nv = m.num_vertices(), ne = m.num_edges(), nt = m.num_triangles();
  cell_dofs_.resize(static_cast<std::size_t>(nt) * local_size_);

  for (int t = 0; t < nt; ++t) {
    int* dofs = cell_dofs_.data() + static_cast<std::size_t>(t) * local_size_;
    const auto& tri = m.triangle(t);
    const auto& te = m.triangle_edges(t);
    if (!continuous_) {
      for (int i = 0; i < local_size_; ++i) dofs[i] = t * local_size_ + i;
      continue;
    }
    switch (basis_) {
      case BasisKind::P1:
        for (int k = 0; k < 3; ++k) dofs[k] = tri[k];
        break;
      case BasisKind::P2:
        for (int k = 0; k < 3; ++k) dofs[k] = tri[k];
        for (int k = 0; k < 3; ++k) dofs[3 + k] = nv + te[k];
        break;
      case BasisKind::P3:
        for (int k = 0; k < 3; ++k) dofs[k] = tri[k];
        for (int k = 0; k < 3; ++k) {
          const int e = te[k];
          const bool aligned = m.edge(e).v[0] == tri[k];
          dofs[3 + 2 * k] = nv + 2 * e + (aligned ? 0 : 1);
          dofs[4 + 2 * k] = nv + 2 * e + (aligned ? 1 : 0);
        }
        dofs[9] = nv + 2 * ne + t;
        break;
      case BasisKind::P1Bubble:
        for (int k = 0; k < 3; ++k) dofs[k] = tri[k];
        dofs[3] = nv + t;
        break;
      case BasisKind::P0:
        throw InvalidArgument("build_space: P0 cannot be continuous");
    }
  }
  num_scalar_ = cell_dofs_.empty() ? 0 : *std::max_element(cell_dofs_.begin(), cell_dofs_.end()) + 1;

  node_coords_.assign(num_scalar_, Point{});
  std::vector<char> seen(num_scalar_, 0);
  const auto ref = reference_nodes(basis_);
  for (int t = 0; t < nt; ++t) {
    const ElementMap map(m, t);
    const auto dofs = cell_dofs(t);
    for (int i = 0; i < local_size_; ++i) {
      if (seen[dofs[i]]) continue;
      seen[dofs[i]] = 1;
      node_coords_[dofs[i]] = map.to_physical(from_barycentric(ref[i]));
    }
  }

  if (role_ == Role::Velocity) {
    is_boundary_.assign(num_scalar_, 0);
    for (int v = 0; v < nv; ++v)
      if (m.is_boundary_vertex(v)) is_boundary_[v] = 1;
    for (int e = 0; e < ne; ++e) {
      if (!m.edge(e).boundary()) continue;
      if (basis_ == BasisKind::P2) is_boundary_[nv + e] = 1;
      if (basis_ == BasisKind::P3) is_boundary_[nv + 2 * e] = is_boundary_[nv + 2 * e + 1] = 1;
    }
    for (int d = 0; d < num_scalar_; ++d)
      if (is_boundary_[d]) boundary_dofs_.push_back(d);
  }
}

std::shared_ptr<const FeSpace> build_space(std::shared_ptr<const Mesh> mesh, ElementFamily family, Role role) {
  return std::make_shared<const FeSpace>(std::move(mesh), family, role);
}

BasisEval eval_basis(const FeSpace& space, int tri, const std::array<double, 3>& barycentric) {
  const int nb = space.dofs_per_cell();
  BasisEval out;
  out.values.resize(nb);
  out.gradients.resize(nb);
  std::vector<std::array<double, 2>> rg(nb);
  std::vector<std::array<double, 3>> rh;
  const RefPoint p = from_barycentric(barycentric);
  eval_reference_basis(space.basis(), p, out.values, rg, rh);
  const MapEval m = ElementMap(space.mesh(), tri).eval(p);
  for (int i = 0; i < nb; ++i) push_forward(m, rg[i], {0, 0, 0}, out.gradients[i], nullptr);
  return out;
}

}  // namespace bingham
