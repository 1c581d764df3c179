#pragma once

#include <array>
#include <optional>

#include "bingham/mesh.hpp"

namespace bingham {

/// Reference triangle (0,0), (1,0), (0,1); barycentric l0 = 1 - xi - eta, l1 = xi, l2 = eta.
struct RefPoint {
  double xi = 0.0;
  double eta = 0.0;
};

inline RefPoint from_barycentric(const std::array<double, 3>& b) { return {b[1], b[2]}; }

struct Mat2 {
  double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;
  double det() const { return a00 * a11 - a01 * a10; }
};

struct MapEval {
  Point x;
  Mat2 jac;    // jac.aij = d x_i / d xi_j
  double det = 0.0;
  Mat2 inv;    // inv.aij = d xi_i / d x_j
  // Second derivatives of x and y w.r.t. (xi,xi), (xi,eta), (eta,eta).
  std::array<std::array<double, 3>, 2> d2x{};
};

/// Map from the reference triangle onto a mesh element: affine, or quadratic
/// (six-node) when the element owns a curved boundary edge.
class ElementMap {
 public:
  ElementMap(const Mesh& mesh, int tri);
  /// Quadratic map from explicit nodes: three vertices followed by the
  /// midpoints of local edges (0,1), (1,2), (2,0).
  explicit ElementMap(const std::array<Point, 6>& nodes, bool curved = true);

  bool curved() const { return curved_; }
  MapEval eval(RefPoint p) const;
  Point to_physical(RefPoint p) const;
  /// Newton inversion; nullopt if the iteration fails to converge.
  std::optional<RefPoint> to_reference(Point x) const;
  const std::array<Point, 6>& nodes() const { return nodes_; }

 private:
  std::array<Point, 6> nodes_{};
  bool curved_ = false;
};

/// Reference coordinates of local vertex k.
RefPoint ref_vertex(int k);

/// Physical gradient and Hessian of a mapped reference function, given its
/// reference gradient (d/dxi, d/deta) and Hessian (xixi, xieta, etaeta).
void push_forward(const MapEval& m, const std::array<double, 2>& ref_grad,
                  const std::array<double, 3>& ref_hess, std::array<double, 2>& grad,
                  std::array<double, 3>* hess);

}  // namespace bingham
