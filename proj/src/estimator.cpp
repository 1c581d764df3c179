#include "bingham/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bingham/fe_values.hpp"

namespace bingham {

namespace {

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Physical gradients of all basis functions of a cell at one reference point.
void physical_grads(const Mesh& mesh, int tri, BasisKind kind, RefPoint p, std::vector<double>& vals,
                    std::vector<std::array<double, 2>>& grads) {
  const int nb = basis_size(kind);
  vals.resize(nb);
  grads.resize(nb);
  std::vector<std::array<double, 2>> rg(nb);
  eval_reference_basis(kind, p, vals, rg, {});
  const MapEval m = ElementMap(mesh, tri).eval(p);
  for (int i = 0; i < nb; ++i) push_forward(m, rg[i], {0, 0, 0}, grads[i], nullptr);
}

}  // namespace

double EstimatorReport::eta_T_total() const { return std::sqrt(total(eta_T_sq)); }
double EstimatorReport::eta_E_total() const { return std::sqrt(total(eta_E_sq)); }
double EstimatorReport::eta_con_total() const { return std::sqrt(std::max(0.0, total(eta_con_sq))); }
double EstimatorReport::osc_total() const { return std::sqrt(total(osc_sq)); }
double EstimatorReport::eta_global() const {
  return std::sqrt(std::max(0.0, total(eta_T_sq) + total(eta_E_sq) + total(eta_con_sq)));
}

EstimatorReport estimate(const ScalarField& u, const VectorField& lam, const BinghamParams& p, bool robust,
                         std::span<const double> pi_grad) {
  p.validate();
  const FeSpace& vs = *u.space;
  const FeSpace& qs = *lam.space;
  if (&vs.mesh() != &qs.mesh()) throw InvalidArgument("estimate: fields live on different meshes");
  const Mesh& mesh = vs.mesh();
  const int nv = vs.dofs_per_cell(), nq = qs.dofs_per_cell();
  const int k = basis_degree(vs.basis());

  std::vector<double> pig;
  if (robust) {
    if (pi_grad.empty()) {
      pig = GradientProjector(u.space, lam.space).apply(u.coeffs);
    } else {
      if (static_cast<int>(pi_grad.size()) != qs.ndof()) throw InvalidArgument("estimate: pi_grad has wrong size");
      pig.assign(pi_grad.begin(), pi_grad.end());
    }
  }

  EstimatorReport rep;
  rep.robust_variant = robust;
  rep.eta_T_sq.assign(mesh.num_triangles(), 0.0);
  rep.eta_con_sq.assign(mesh.num_triangles(), 0.0);
  rep.osc_sq.assign(mesh.num_triangles(), 0.0);
  rep.eta_E_sq.assign(mesh.num_edges(), 0.0);

  const int deg = 2 * k + 2;
  CellIntegrator vi(vs.basis(), deg, 2, true), qi(qs.basis(), deg);
  std::vector<double> res;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = vi.reinit(mesh, t);
    const CellValues& cq = qi.reinit(mesh, t);
    const auto vd = vs.cell_dofs(t);
    const auto qd = qs.cell_dofs(t);
    const int nqp = cv.num_points();
    res.assign(nqp, 0.0);
    double area = 0.0, fint = 0.0, con = 0.0;
    std::vector<double> fq(nqp);
    for (int q = 0; q < nqp; ++q) {
      double lap = 0.0, gx = 0.0, gy = 0.0;
      for (int i = 0; i < nv; ++i) {
        const double c = u.coeffs[vd[i]];
        lap += c * cv.laplacian(q, i);
        gx += c * cv.grad(q, i)[0];
        gy += c * cv.grad(q, i)[1];
      }
      double div = 0.0, lx = 0.0, ly = 0.0, px = 0.0, py = 0.0;
      for (int j = 0; j < nq; ++j) {
        const double cx = lam.coeffs[2 * qd[j]], cy = lam.coeffs[2 * qd[j] + 1];
        div += cx * cq.grad(q, j)[0] + cy * cq.grad(q, j)[1];
        lx += cx * cq.value(q, j);
        ly += cy * cq.value(q, j);
        if (robust) {
          px += pig[2 * qd[j]] * cq.value(q, j);
          py += pig[2 * qd[j] + 1] * cq.value(q, j);
        }
      }
      fq[q] = p.f(cv.x(q));
      const double r = p.mu * lap + p.g * div + fq[q];
      res[q] = r * r;
      const double w = cv.JxW(q);
      area += w;
      fint += w * fq[q];
      double pair = lx * gx + ly * gy;
      if (robust) {
        // P is applied at the quadrature point, not at the multiplier nodes.
        const Point t = project_ball({lx + p.rho * px, ly + p.rho * py});
        pair = t.x * px + t.y * py;
      }
      con += w * (std::hypot(gx, gy) - pair);
    }
    const double h = mesh.diameter(t);
    const double fbar = fint / area;
    double rt = 0.0, osc = 0.0;
    for (int q = 0; q < nqp; ++q) {
      rt += cv.JxW(q) * res[q];
      osc += cv.JxW(q) * (fq[q] - fbar) * (fq[q] - fbar);
    }
    rep.eta_T_sq[t] = h * h * rt;
    rep.osc_sq[t] = h * h * osc;
    rep.eta_con_sq[t] = p.g * con;
  }

  const LineRule line = line_rule(2 * k);
  std::vector<double> vv, qv;
  std::vector<std::array<double, 2>> vg, qg;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary()) continue;
    const auto sides = edge_sides(mesh, e);
    const Point n = edge_normal(mesh, e);
    double sum = 0.0;
    for (int q = 0; q < line.size(); ++q) {
      double jump = 0.0;
      for (int s = 0; s < 2; ++s) {
        const int t = sides[s].tri;
        const RefPoint rp = edge_side_point(sides[s], line.points[q]);
        physical_grads(mesh, t, vs.basis(), rp, vv, vg);
        qv.resize(nq);
        eval_reference_basis(qs.basis(), rp, qv, {}, {});
        const auto vd = vs.cell_dofs(t);
        const auto qd = qs.cell_dofs(t);
        double flux = 0.0;
        for (int i = 0; i < nv; ++i) flux += p.mu * u.coeffs[vd[i]] * (vg[i][0] * n.x + vg[i][1] * n.y);
        for (int j = 0; j < nq; ++j)
          flux += p.g * qv[j] * (lam.coeffs[2 * qd[j]] * n.x + lam.coeffs[2 * qd[j] + 1] * n.y);
        jump += s == 0 ? flux : -flux;
      }
      sum += line.weights[q] * jump * jump;
    }
    const double h = mesh.edge_length(e);
    rep.eta_E_sq[e] = h * h * sum;
  }
  return rep;
}

std::vector<double> element_indicators(const EstimatorReport& report, const Mesh& mesh) {
  if (static_cast<int>(report.eta_T_sq.size()) != mesh.num_triangles() ||
      static_cast<int>(report.eta_E_sq.size()) != mesh.num_edges())
    throw InvalidArgument("element_indicators: report does not match the mesh");
  std::vector<double> out(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    double s = report.eta_T_sq[t] + report.eta_con_sq[t];
    for (int e : mesh.triangle_edges(t)) s += 0.25 * report.eta_E_sq[e];
    out[t] = std::sqrt(std::max(0.0, s));
  }
  return out;
}

std::set<int> mark_indicators(std::span<const double> indicators, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("mark: theta must lie in [0, 1]");
  std::set<int> out;
  if (indicators.empty()) return out;
  const double mx = *std::max_element(indicators.begin(), indicators.end());
  if (!(mx > 0.0)) return out;
  for (std::size_t t = 0; t < indicators.size(); ++t)
    if (indicators[t] > theta * mx) out.insert(static_cast<int>(t));
  return out;
}

std::set<int> mark(const EstimatorReport& report, const Mesh& mesh, double theta) {
  return mark_indicators(element_indicators(report, mesh), theta);
}

}  // namespace bingham
