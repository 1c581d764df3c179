#pragma once

#include <array>
#include <vector>

#include "bingham/basis.hpp"
#include "bingham/geometry.hpp"
#include "bingham/quadrature.hpp"

namespace bingham {

/// Basis values and physical derivatives at a fixed set of reference points,
/// re-evaluated for each cell.
class CellValues {
 public:
  CellValues(BasisKind kind, const QuadratureRule& rule, bool hessians = false);
  /// Arbitrary reference points; JxW() then holds weight * |det J|.
  CellValues(BasisKind kind, std::vector<RefPoint> points, std::vector<double> weights,
             bool hessians = false);

  void reinit(const Mesh& mesh, int tri);
  /// Re-targets the reference points (same count) before a reinit.
  void set_points(const std::vector<RefPoint>& points);

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_basis() const { return table_.num_basis; }
  double JxW(int q) const { return jxw_[q]; }
  const Point& x(int q) const { return x_[q]; }
  double value(int q, int i) const { return table_.value(q, i); }
  const std::array<double, 2>& grad(int q, int i) const { return grad_[q * table_.num_basis + i]; }
  const std::array<double, 3>& hessian(int q, int i) const { return hess_[q * table_.num_basis + i]; }
  double laplacian(int q, int i) const {
    const auto& h = hessian(q, i);
    return h[0] + h[2];
  }

 private:
  BasisKind kind_;
  bool hessians_;
  std::vector<RefPoint> points_;
  std::vector<double> weights_;
  BasisTable table_;
  std::vector<double> jxw_;
  std::vector<Point> x_;
  std::vector<std::array<double, 2>> grad_;
  std::vector<std::array<double, 3>> hess_;
};

/// Cell values on a rule of the given degree, raised by `curved_extra` on
/// elements with a quadratic map.
class CellIntegrator {
 public:
  CellIntegrator(BasisKind kind, int degree, int curved_extra = 2, bool hessians = false)
      : affine_(kind, triangle_rule(degree), hessians),
        curved_(kind, triangle_rule(degree + curved_extra), hessians) {}

  CellValues& reinit(const Mesh& mesh, int tri) {
    CellValues& cv = mesh.is_curved(tri) ? curved_ : affine_;
    cv.reinit(mesh, tri);
    return cv;
  }

 private:
  CellValues affine_;
  CellValues curved_;
};

/// Reference coordinates of the point at parameter s along local edge k,
/// s = 0 at local vertex k and s = 1 at local vertex k+1.
RefPoint edge_ref_point(int k, double s);

/// One triangle adjacent to a mesh edge. The edge parameter s runs from
/// edge.v[0] (s = 0) to edge.v[1] (s = 1).
struct EdgeSide {
  int tri = -1;
  int local = -1;
  bool reversed = false;
};

/// Adjacent triangles of edge e; the second side has tri = -1 on the boundary.
std::array<EdgeSide, 2> edge_sides(const Mesh& mesh, int e);
RefPoint edge_side_point(const EdgeSide& side, double s);
/// Unit normal of a straight edge pointing out of side 0.
Point edge_normal(const Mesh& mesh, int e);

}  // namespace bingham
