#include "bingham/fe_values.hpp"

#include <cmath>

namespace bingham {

CellValues::CellValues(BasisKind kind, const QuadratureRule& rule, bool hessians)
    : kind_(kind), hessians_(hessians) {
  points_.reserve(rule.size());
  for (const auto& b : rule.points) points_.push_back(from_barycentric(b));
  weights_ = rule.weights;
  set_points(points_);
}

CellValues::CellValues(BasisKind kind, std::vector<RefPoint> points, std::vector<double> weights,
                       bool hessians)
    : kind_(kind), hessians_(hessians), weights_(std::move(weights)) {
  set_points(points);
}

void CellValues::set_points(const std::vector<RefPoint>& points) {
  points_ = points;
  table_ = tabulate(kind_, points_);
  const std::size_t n = points_.size() * table_.num_basis;
  jxw_.assign(points_.size(), 0.0);
  x_.assign(points_.size(), Point{});
  grad_.assign(n, {0.0, 0.0});
  hess_.assign(hessians_ ? n : 0, {0.0, 0.0, 0.0});
}

void CellValues::reinit(const Mesh& mesh, int tri) {
  const ElementMap map(mesh, tri);
  const int nb = table_.num_basis;
  MapEval m;
  for (int q = 0; q < num_points(); ++q) {
    if (q == 0 || map.curved()) {
      m = map.eval(points_[q]);
    } else {
      const Point e1{m.jac.a00, m.jac.a10}, e2{m.jac.a01, m.jac.a11};
      m.x = map.nodes()[0] + points_[q].xi * e1 + points_[q].eta * e2;
    }
    jxw_[q] = weights_[q] * std::abs(m.det);
    x_[q] = m.x;
    for (int i = 0; i < nb; ++i) {
      const std::size_t idx = static_cast<std::size_t>(q) * nb + i;
      push_forward(m, table_.grads[idx], table_.hess[idx], grad_[idx], hessians_ ? &hess_[idx] : nullptr);
    }
  }
}

RefPoint edge_ref_point(int k, double s) {
  const RefPoint a = ref_vertex(k), b = ref_vertex(k + 1);
  return {(1.0 - s) * a.xi + s * b.xi, (1.0 - s) * a.eta + s * b.eta};
}

std::array<EdgeSide, 2> edge_sides(const Mesh& mesh, int e) {
  const Edge& edge = mesh.edge(e);
  std::array<EdgeSide, 2> out;
  for (int s = 0; s < 2; ++s) {
    const int t = edge.tris[s];
    if (t < 0) continue;
    const auto& te = mesh.triangle_edges(t);
    for (int k = 0; k < 3; ++k) {
      if (te[k] != e) continue;
      out[s] = {t, k, mesh.triangle(t)[k] != edge.v[0]};
      break;
    }
  }
  return out;
}

RefPoint edge_side_point(const EdgeSide& side, double s) {
  return edge_ref_point(side.local, side.reversed ? 1.0 - s : s);
}

Point edge_normal(const Mesh& mesh, int e) {
  const EdgeSide side = edge_sides(mesh, e)[0];
  const Triangle& t = mesh.triangle(side.tri);
  const Point d = mesh.vertex(t[(side.local + 1) % 3]) - mesh.vertex(t[side.local]);
  const double len = norm(d);
  return {d.y / len, -d.x / len};
}

}  // namespace bingham
