#include "bingham/error_norms.hpp"

#include <cmath>

#include "bingham/fe_values.hpp"

namespace bingham {

H1Error h1_error(const ScalarField& u, const ScalarFunction& exact, const VectorFunction& exact_grad) {
  const FeSpace& s = *u.space;
  const Mesh& mesh = s.mesh();
  CellIntegrator integ(s.basis(), 2 * basis_degree(s.basis()) + 2);
  const int nb = s.dofs_per_cell();
  double semi = 0.0, l2 = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = integ.reinit(mesh, t);
    const auto dofs = s.cell_dofs(t);
    for (int q = 0; q < cv.num_points(); ++q) {
      double val = 0.0, gx = 0.0, gy = 0.0;
      for (int i = 0; i < nb; ++i) {
        const double c = u.coeffs[dofs[i]];
        val += c * cv.value(q, i);
        gx += c * cv.grad(q, i)[0];
        gy += c * cv.grad(q, i)[1];
      }
      const Point x = cv.x(q);
      const Point ge = exact_grad(x);
      const double dv = exact(x) - val;
      semi += cv.JxW(q) * ((ge.x - gx) * (ge.x - gx) + (ge.y - gy) * (ge.y - gy));
      l2 += cv.JxW(q) * dv * dv;
    }
  }
  return {std::sqrt(semi), std::sqrt(semi + l2)};
}

H1Error h1_error(const ScalarField& u, const CircleExact& c) {
  return h1_error(
      u, [&c](Point x) { return velocity_profile(norm(x), c); }, [&c](Point x) { return exact_gradient(x, c); });
}

double MultiplierError::value() const { return std::sqrt(element_sq + edge_sq); }

MultiplierError multiplier_error(const VectorField& lam, const ScalarFunction& exact_div) {
  const FeSpace& s = *lam.space;
  const Mesh& mesh = s.mesh();
  const int nb = s.dofs_per_cell();
  const int deg = basis_degree(s.basis());
  // The exact divergence may jump inside an element, so over-integrate.
  CellIntegrator integ(s.basis(), 2 * deg + 6);
  MultiplierError out;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = integ.reinit(mesh, t);
    const auto dofs = s.cell_dofs(t);
    double sum = 0.0;
    for (int q = 0; q < cv.num_points(); ++q) {
      double div_h = 0.0;
      for (int i = 0; i < nb; ++i)
        div_h += lam.coeffs[2 * dofs[i]] * cv.grad(q, i)[0] + lam.coeffs[2 * dofs[i] + 1] * cv.grad(q, i)[1];
      const double d = exact_div(cv.x(q)) - div_h;
      sum += cv.JxW(q) * d * d;
    }
    const double h = mesh.diameter(t);
    out.element_sq += h * h * sum;
  }

  if (s.continuous()) return out;  // Normal component has no jump.
  const LineRule line = line_rule(2 * deg);
  std::vector<double> v0(nb), v1(nb);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary()) continue;
    const auto sides = edge_sides(mesh, e);
    const Point n = edge_normal(mesh, e);
    const auto d0 = s.cell_dofs(sides[0].tri), d1 = s.cell_dofs(sides[1].tri);
    double sum = 0.0;
    for (int q = 0; q < line.size(); ++q) {
      eval_reference_basis(s.basis(), edge_side_point(sides[0], line.points[q]), v0, {}, {});
      eval_reference_basis(s.basis(), edge_side_point(sides[1], line.points[q]), v1, {}, {});
      double jump = 0.0;
      for (int i = 0; i < nb; ++i) {
        jump += v0[i] * (lam.coeffs[2 * d0[i]] * n.x + lam.coeffs[2 * d0[i] + 1] * n.y);
        jump -= v1[i] * (lam.coeffs[2 * d1[i]] * n.x + lam.coeffs[2 * d1[i] + 1] * n.y);
      }
      sum += line.weights[q] * jump * jump;
    }
    const double h = mesh.edge_length(e);
    out.edge_sq += h * h * sum;  // h_E times the edge integral (ds = h_E dt)
  }
  return out;
}

MultiplierError multiplier_error(const VectorField& lam, const CircleExact& c) {
  return multiplier_error(lam, [&c](Point x) { return exact_div_lambda(norm(x), c); });
}

}  // namespace bingham
