#include "bingham/exact.hpp"

#include <cmath>

namespace bingham {

void CircleExact::validate() const {
  if (!(R > 0.0)) throw InvalidArgument("CircleExact: R must be positive");
  if (!(mu > 0.0)) throw InvalidArgument("CircleExact: mu must be positive");
  if (!(g >= 0.0)) throw InvalidArgument("CircleExact: g must be non-negative");
  if (!(f >= 0.0)) throw InvalidArgument("CircleExact: f must be non-negative");
}

namespace {

double liquid(double r, const CircleExact& c) {
  return (c.R - r) / 2.0 * (c.f * (c.R + r) / 2.0 - 2.0 * c.g) / c.mu;
}

}  // namespace

double velocity_profile(double r, const CircleExact& c) {
  const double rp = c.plug_radius();
  if (rp >= c.R) return 0.0;
  return liquid(std::max(r, rp), c);
}

double exact_velocity(double r, const CircleExact& c) {
  if (r < 0.0 || r > c.R) throw InvalidArgument("exact_velocity: radius outside [0, R]");
  return velocity_profile(r, c);
}

double velocity_slope(double r, const CircleExact& c) {
  if (r <= c.plug_radius()) return 0.0;
  return (c.g - c.f * r / 2.0) / c.mu;
}

Point exact_gradient(Point x, const CircleExact& c) {
  const double r = norm(x);
  const double s = velocity_slope(r, c);
  if (s == 0.0 || r == 0.0) return {0.0, 0.0};
  return (s / r) * x;
}

Point exact_lambda(Point x, const CircleExact& c) {
  const double r = norm(x);
  if (r == 0.0) return {0.0, 0.0};
  if (c.g > 0.0 && r <= c.plug_radius()) return (-c.f / (2.0 * c.g)) * x;
  return (-1.0 / r) * x;
}

double exact_div_lambda(double r, const CircleExact& c) {
  if (c.g > 0.0 && r <= c.plug_radius()) return -c.f / c.g;
  return -1.0 / r;
}

}  // namespace bingham
