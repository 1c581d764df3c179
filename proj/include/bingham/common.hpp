#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bingham {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by iterative linear solvers that exhaust their iteration budget.
class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double last_residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Raised by the Uzawa iteration when the increment never drops below the tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> increments)
      : std::runtime_error(what), increments_(std::move(increments)) {}
  const std::vector<double>& increments() const { return increments_; }

 private:
  std::vector<double> increments_;
};

}  // namespace bingham
