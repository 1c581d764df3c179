#pragma once

#include <array>
#include <vector>

namespace bingham {

/// Triangle rule on the reference triangle; points in barycentric coordinates,
/// weights summing to the reference area 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int exactness_degree = 0;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Rule on [0, 1] with weights summing to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

/// n-point Gauss-Legendre rule mapped to [0, 1].
LineRule gauss_line(int n);
/// Gauss-Legendre rule exact for polynomials of the given degree on [0, 1].
LineRule line_rule(int degree);
/// Collapsed (Duffy) tensor Gauss rule exact for polynomials of the given degree.
QuadratureRule triangle_rule(int degree);

}  // namespace bingham
