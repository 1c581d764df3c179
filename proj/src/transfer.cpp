#include "bingham/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bingham/uzawa.hpp"

namespace bingham {

PointLocator::PointLocator(const Mesh& mesh, int buckets_per_side) : mesh_(mesh) {
  if (mesh.num_triangles() == 0) throw InvalidArgument("PointLocator: empty mesh");
  double x1 = -INFINITY, y1 = -INFINITY;
  x0_ = y0_ = INFINITY;
  for (const Point& p : mesh.vertices()) {
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  // Curved edges bulge past the vertex hull.
  const double pad = 0.05 * std::max(x1 - x0_, y1 - y0_);
  x0_ -= pad;
  y0_ -= pad;
  x1 += pad;
  y1 += pad;
  const int n = buckets_per_side > 0 ? buckets_per_side
                                     : std::max(1, static_cast<int>(std::sqrt(mesh.num_triangles() / 2.0)));
  nx_ = ny_ = n;
  dx_ = (x1 - x0_) / nx_;
  dy_ = (y1 - y0_) / ny_;
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMap map(mesh, t);
    double bx0 = INFINITY, by0 = INFINITY, bx1 = -INFINITY, by1 = -INFINITY;
    for (const Point& p : map.nodes()) {
      bx0 = std::min(bx0, p.x);
      by0 = std::min(by0, p.y);
      bx1 = std::max(bx1, p.x);
      by1 = std::max(by1, p.y);
    }
    const int i0 = std::clamp(static_cast<int>((bx0 - x0_) / dx_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((bx1 - x0_) / dx_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((by0 - y0_) / dy_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((by1 - y0_) / dy_), 0, ny_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
  }
}

std::optional<Location> PointLocator::try_cell(int t, Point x, double& best) const {
  const auto r = ElementMap(mesh_, t).to_reference(x);
  if (!r) return std::nullopt;
  const double m = std::min({1.0 - r->xi - r->eta, r->xi, r->eta});
  if (m <= best) return std::nullopt;
  best = m;
  return Location{t, *r};
}

Location PointLocator::locate(Point x) const {
  const int i = std::clamp(static_cast<int>((x.x - x0_) / dx_), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>((x.y - y0_) / dy_), 0, ny_ - 1);
  double best = -INFINITY;
  Location loc;
  for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
    if (auto l = try_cell(t, x, best)) loc = *l;
    if (best >= -1e-12) return loc;
  }
  if (best < -1e-9) {
    for (int t = 0; t < mesh_.num_triangles(); ++t)
      if (auto l = try_cell(t, x, best)) loc = *l;
  }
  if (loc.tri < 0) throw InvalidArgument("PointLocator: point could not be located");
  return loc;
}

std::vector<double> transfer_velocity(const ScalarField& u, const FeSpace& target) {
  if (target.role() != Role::Velocity) throw InvalidArgument("transfer_velocity: velocity space required");
  const PointLocator loc(u.space->mesh());
  const auto& nodes = target.node_coords();
  std::vector<double> out(target.ndof(), 0.0);
  for (int d = 0; d < target.ndof(); ++d) {
    if (target.is_boundary_dof(d)) continue;
    const Location l = loc.locate(nodes[d]);
    out[d] = eval_field(u, l.tri, l.ref).value;
  }
  if (target.basis() == BasisKind::P1Bubble) {
    // The bubble node holds the full value; the coefficient is the excess over
    // the linear part.
    const Mesh& m = target.mesh();
    std::vector<double> lin(target.ndof());
    for (int t = 0; t < m.num_triangles(); ++t) {
      const auto dofs = target.cell_dofs(t);
      lin[dofs[3]] = (out[dofs[0]] + out[dofs[1]] + out[dofs[2]]) / 3.0;
    }
    for (int t = 0; t < m.num_triangles(); ++t) out[target.cell_dofs(t)[3]] -= lin[target.cell_dofs(t)[3]];
  }
  return out;
}

std::vector<double> transfer_multiplier(const VectorField& lam, const FeSpace& target) {
  if (target.role() != Role::Multiplier) throw InvalidArgument("transfer_multiplier: multiplier space required");
  const PointLocator loc(lam.space->mesh());
  const Mesh& m = target.mesh();
  const auto& nodes = target.node_coords();
  std::vector<double> out(target.ndof(), 0.0);
  std::vector<char> done(target.num_scalar_dofs(), 0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Triangle& tv = m.triangle(t);
    const Point c = (1.0 / 3.0) * (m.vertex(tv[0]) + m.vertex(tv[1]) + m.vertex(tv[2]));
    for (int d : target.cell_dofs(t)) {
      if (done[d]) continue;
      done[d] = 1;
      // Discontinuous nodes are sampled just inside their own element.
      const Point x = target.continuous() ? nodes[d] : nodes[d] + 1e-9 * (c - nodes[d]);
      const Location l = loc.locate(x);
      const Point v = eval_multiplier(lam, l.tri, l.ref);
      out[2 * d] = v.x;
      out[2 * d + 1] = v.y;
    }
  }
  project_nodal(out);
  return out;
}

}  // namespace bingham
