#include "bingham/geometry.hpp"

#include <cmath>

namespace bingham {

RefPoint ref_vertex(int k) {
  switch (k % 3) {
    case 0: return {0.0, 0.0};
    case 1: return {1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

ElementMap::ElementMap(const Mesh& mesh, int tri) {
  const auto& t = mesh.triangle(tri);
  const auto& te = mesh.triangle_edges(tri);
  for (int k = 0; k < 3; ++k) nodes_[k] = mesh.vertex(t[k]);
  for (int k = 0; k < 3; ++k) {
    const auto& c = mesh.curved_node(te[k]);
    if (c) {
      nodes_[3 + k] = *c;
      curved_ = true;
    } else {
      nodes_[3 + k] = midpoint(nodes_[k], nodes_[(k + 1) % 3]);
    }
  }
}

ElementMap::ElementMap(const std::array<Point, 6>& nodes, bool curved) : nodes_(nodes), curved_(curved) {}

MapEval ElementMap::eval(RefPoint p) const {
  MapEval m;
  if (!curved_) {
    const Point e1 = nodes_[1] - nodes_[0];
    const Point e2 = nodes_[2] - nodes_[0];
    m.x = nodes_[0] + p.xi * e1 + p.eta * e2;
    m.jac = {e1.x, e2.x, e1.y, e2.y};
  } else {
    const double l0 = 1.0 - p.xi - p.eta, l1 = p.xi, l2 = p.eta;
    // Six-node shape functions and their (xi, eta) derivatives.
    const double n[6] = {l0 * (2 * l0 - 1), l1 * (2 * l1 - 1), l2 * (2 * l2 - 1),
                         4 * l0 * l1, 4 * l1 * l2, 4 * l2 * l0};
    const double dxi[6] = {-(4 * l0 - 1), 4 * l1 - 1, 0.0, 4 * (l0 - l1), 4 * l2, -4 * l2};
    const double deta[6] = {-(4 * l0 - 1), 0.0, 4 * l2 - 1, -4 * l1, 4 * l1, 4 * (l0 - l2)};
    // Constant second derivatives (xixi, xieta, etaeta).
    static constexpr double d2[6][3] = {{4, 4, 4}, {4, 0, 0}, {0, 0, 4},
                                        {-8, -4, 0}, {0, 4, 0}, {0, -4, -8}};
    for (int i = 0; i < 6; ++i) {
      m.x = m.x + n[i] * nodes_[i];
      m.jac.a00 += dxi[i] * nodes_[i].x;
      m.jac.a01 += deta[i] * nodes_[i].x;
      m.jac.a10 += dxi[i] * nodes_[i].y;
      m.jac.a11 += deta[i] * nodes_[i].y;
      for (int k = 0; k < 3; ++k) {
        m.d2x[0][k] += d2[i][k] * nodes_[i].x;
        m.d2x[1][k] += d2[i][k] * nodes_[i].y;
      }
    }
  }
  m.det = m.jac.det();
  const double id = 1.0 / m.det;
  m.inv = {m.jac.a11 * id, -m.jac.a01 * id, -m.jac.a10 * id, m.jac.a00 * id};
  return m;
}

Point ElementMap::to_physical(RefPoint p) const { return eval(p).x; }

std::optional<RefPoint> ElementMap::to_reference(Point x) const {
  RefPoint p{1.0 / 3.0, 1.0 / 3.0};
  const double scale = norm(nodes_[1] - nodes_[0]) + norm(nodes_[2] - nodes_[0]);
  for (int it = 0; it < 50; ++it) {
    const MapEval m = eval(p);
    const Point r = x - m.x;
    if (norm(r) <= 1e-14 * scale) return p;
    p.xi += m.inv.a00 * r.x + m.inv.a01 * r.y;
    p.eta += m.inv.a10 * r.x + m.inv.a11 * r.y;
    if (!curved_) return p;
  }
  return std::nullopt;
}

void push_forward(const MapEval& m, const std::array<double, 2>& rg, const std::array<double, 3>& rh,
                  std::array<double, 2>& grad, std::array<double, 3>* hess) {
  const Mat2& J = m.inv;
  grad[0] = rg[0] * J.a00 + rg[1] * J.a10;
  grad[1] = rg[0] * J.a01 + rg[1] * J.a11;
  if (!hess) return;
  // H = Jinv^T (Href - sum_c grad_c D2x_c) Jinv
  const double h00 = rh[0] - grad[0] * m.d2x[0][0] - grad[1] * m.d2x[1][0];
  const double h01 = rh[1] - grad[0] * m.d2x[0][1] - grad[1] * m.d2x[1][1];
  const double h11 = rh[2] - grad[0] * m.d2x[0][2] - grad[1] * m.d2x[1][2];
  auto entry = [&](double ai, double bi, double aj, double bj) {
    // (col i of Jinv)^T H (col j of Jinv), columns (a, b) = (J.a0i, J.a1i)
    return ai * (h00 * aj + h01 * bj) + bi * (h01 * aj + h11 * bj);
  };
  (*hess)[0] = entry(J.a00, J.a10, J.a00, J.a10);
  (*hess)[1] = entry(J.a00, J.a10, J.a01, J.a11);
  (*hess)[2] = entry(J.a01, J.a11, J.a01, J.a11);
}

}  // namespace bingham
