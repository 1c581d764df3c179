#pragma once

#include "bingham/common.hpp"

namespace bingham {

/// Closed-form Bingham flow in a circular pipe of radius R under a constant
/// load f. The material is rigid inside the plug radius R_p = 2g/f.
struct CircleExact {
  double R = 1.0;
  double f = 0.5;
  double g = 0.1;
  double mu = 1.0;

  double plug_radius() const { return f > 0.0 ? 2.0 * g / f : INFINITY; }
  void validate() const;
};

/// u(r) for 0 <= r <= R; throws InvalidArgument outside that range.
double exact_velocity(double r, const CircleExact& c);
/// Same formula without the range check (quadrature points on curved elements
/// may sit a hair outside the circle).
double velocity_profile(double r, const CircleExact& c);
/// du/dr.
double velocity_slope(double r, const CircleExact& c);
Point exact_gradient(Point x, const CircleExact& c);
/// Radial multiplier: -e_r in the liquid, -(f/2g) r e_r in the plug.
Point exact_lambda(Point x, const CircleExact& c);
/// div Lambda: -1/r in the liquid, -f/g in the plug (the plug side at r = R_p).
double exact_div_lambda(double r, const CircleExact& c);

}  // namespace bingham
