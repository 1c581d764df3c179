#include "bingham/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bingham/common.hpp"

namespace bingham {

LineRule gauss_line(int n) {
  if (n < 1) throw InvalidArgument("gauss_line: need at least one point");
  LineRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

LineRule line_rule(int degree) { return gauss_line(std::max(1, (degree + 2) / 2)); }

QuadratureRule triangle_rule(int degree) {
  if (degree < 0) throw InvalidArgument("triangle_rule: negative degree");
  // x = u, y = v (1 - u), dx dy = (1 - u) du dv; the collapsed integrand of a
  // degree-d monomial has degree d + 1 in u and d in v.
  const LineRule ru = line_rule(degree + 1);
  const LineRule rv = line_rule(degree);
  QuadratureRule rule;
  rule.exactness_degree = degree;
  for (int i = 0; i < ru.size(); ++i) {
    for (int j = 0; j < rv.size(); ++j) {
      const double x = ru.points[i];
      const double y = rv.points[j] * (1.0 - x);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(ru.weights[i] * rv.weights[j] * (1.0 - x));
    }
  }
  return rule;
}

}  // namespace bingham
