#include "bingham/assembly.hpp"

#include <cmath>

#include "bingham/fe_values.hpp"

namespace bingham {

namespace {

void require_same_mesh(const FeSpace& a, const FeSpace& b, const char* who) {
  if (&a.mesh() != &b.mesh()) throw InvalidArgument(std::string(who) + ": spaces live on different meshes");
}

int multiplier_degree(const FeSpace& q) { return basis_degree(q.basis()); }

}  // namespace

SparseMatrix assemble_stiffness(const FeSpace& space, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("assemble_stiffness: mu must be positive");
  if (space.role() != Role::Velocity) throw InvalidArgument("assemble_stiffness: velocity space required");
  const Mesh& mesh = space.mesh();
  const int deg = basis_degree(space.basis());
  CellIntegrator integ(space.basis(), 2 * (deg - 1));
  const int nb = space.dofs_per_cell();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nb * nb);
  std::vector<double> local(nb * nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = integ.reinit(mesh, t);
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < cv.num_points(); ++q) {
      const double w = mu * cv.JxW(q);
      for (int i = 0; i < nb; ++i) {
        const auto& gi = cv.grad(q, i);
        for (int j = 0; j < nb; ++j) {
          const auto& gj = cv.grad(q, j);
          local[i * nb + j] += w * (gi[0] * gj[0] + gi[1] * gj[1]);
        }
      }
    }
    const auto dofs = space.cell_dofs(t);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) trip.push_back({dofs[i], dofs[j], local[i * nb + j]});
  }
  return SparseMatrix::from_triplets(space.ndof(), space.ndof(), std::move(trip));
}

std::vector<double> assemble_load(const FeSpace& space, const ScalarFunction& f) {
  if (space.role() != Role::Velocity) throw InvalidArgument("assemble_load: velocity space required");
  const Mesh& mesh = space.mesh();
  CellIntegrator integ(space.basis(), basis_degree(space.basis()) + 2);
  std::vector<double> b(space.ndof(), 0.0);
  const int nb = space.dofs_per_cell();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = integ.reinit(mesh, t);
    const auto dofs = space.cell_dofs(t);
    for (int q = 0; q < cv.num_points(); ++q) {
      const double fw = f(cv.x(q)) * cv.JxW(q);
      for (int i = 0; i < nb; ++i) b[dofs[i]] += fw * cv.value(q, i);
    }
  }
  return b;
}

SparseMatrix assemble_coupling(const FeSpace& v_space, const FeSpace& q_space) {
  require_same_mesh(v_space, q_space, "assemble_coupling");
  if (v_space.role() != Role::Velocity || q_space.role() != Role::Multiplier)
    throw InvalidArgument("assemble_coupling: expected (velocity, multiplier) spaces");
  const Mesh& mesh = v_space.mesh();
  const int deg = basis_degree(v_space.basis()) - 1 + multiplier_degree(q_space);
  CellIntegrator vi(v_space.basis(), deg), qi(q_space.basis(), deg);
  const int nv = v_space.dofs_per_cell(), nq = q_space.dofs_per_cell();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nv * nq * 2);
  std::vector<double> local(nv * nq * 2);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const CellValues& cv = vi.reinit(mesh, t);
    const CellValues& cq = qi.reinit(mesh, t);
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < cv.num_points(); ++q) {
      for (int i = 0; i < nv; ++i) {
        const auto& g = cv.grad(q, i);
        for (int j = 0; j < nq; ++j) {
          const double w = cv.JxW(q) * cq.value(q, j);
          local[(i * nq + j) * 2] += g[0] * w;
          local[(i * nq + j) * 2 + 1] += g[1] * w;
        }
      }
    }
    const auto vd = v_space.cell_dofs(t);
    const auto qd = q_space.cell_dofs(t);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nq; ++j)
        for (int c = 0; c < 2; ++c) trip.push_back({vd[i], 2 * qd[j] + c, local[(i * nq + j) * 2 + c]});
  }
  return SparseMatrix::from_triplets(v_space.ndof(), q_space.ndof(), std::move(trip));
}

namespace {

// Scalar mass block of one cell (row-major nq x nq).
void local_mass(const CellValues& cq, int nq, std::vector<double>& m) {
  m.assign(nq * nq, 0.0);
  for (int q = 0; q < cq.num_points(); ++q)
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < nq; ++j) m[i * nq + j] += cq.JxW(q) * cq.value(q, i) * cq.value(q, j);
}

}  // namespace

SparseMatrix assemble_multiplier_mass(const FeSpace& q_space) {
  if (q_space.role() != Role::Multiplier) throw InvalidArgument("assemble_multiplier_mass: multiplier space required");
  const Mesh& mesh = q_space.mesh();
  CellIntegrator integ(q_space.basis(), 2 * multiplier_degree(q_space));
  const int nq = q_space.dofs_per_cell();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nq * nq * 2);
  std::vector<double> m;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    local_mass(integ.reinit(mesh, t), nq, m);
    const auto dofs = q_space.cell_dofs(t);
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < nq; ++j)
        for (int c = 0; c < 2; ++c) trip.push_back({2 * dofs[i] + c, 2 * dofs[j] + c, m[i * nq + j]});
  }
  return SparseMatrix::from_triplets(q_space.ndof(), q_space.ndof(), std::move(trip));
}

std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(const SparseMatrix& A, std::span<const double> b,
                                                             const FeSpace& space) {
  if (A.rows() != space.ndof() || A.cols() != space.ndof() || static_cast<int>(b.size()) != space.ndof())
    throw InvalidArgument("apply_dirichlet: dimension mismatch");
  std::vector<int> rp = A.row_ptr();
  std::vector<int> cols = A.col_index();
  std::vector<double> vals = A.values();
  std::vector<double> rhs(b.begin(), b.end());
  for (int i = 0; i < A.rows(); ++i) {
    const bool row_fixed = space.is_boundary_dof(i);
    for (int k = rp[i]; k < rp[i + 1]; ++k) {
      const int j = cols[k];
      if (row_fixed || space.is_boundary_dof(j)) vals[k] = (i == j) ? 1.0 : 0.0;
    }
    if (row_fixed) rhs[i] = 0.0;
  }
  return {SparseMatrix(A.rows(), A.cols(), std::move(rp), std::move(cols), std::move(vals)), std::move(rhs)};
}

std::vector<double> invert_spd(std::span<const double> a, int n) {
  // Gauss-Jordan without pivoting is safe for SPD input.
  std::vector<double> m(a.begin(), a.end()), inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int c = 0; c < n; ++c) {
    const double piv = m[c * n + c];
    if (!(piv > 0.0)) throw InvalidArgument("invert_spd: matrix is not positive definite");
    for (int j = 0; j < n; ++j) {
      m[c * n + j] /= piv;
      inv[c * n + j] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r * n + c];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m[r * n + j] -= f * m[c * n + j];
        inv[r * n + j] -= f * inv[c * n + j];
      }
    }
  }
  return inv;
}

GradientProjector::GradientProjector(std::shared_ptr<const FeSpace> v_space, std::shared_ptr<const FeSpace> q_space)
    : v_space_(std::move(v_space)), q_space_(std::move(q_space)) {
  require_same_mesh(*v_space_, *q_space_, "GradientProjector");
  coupling_ = assemble_coupling(*v_space_, *q_space_);
  mass_ = assemble_multiplier_mass(*q_space_);
  if (!q_space_->continuous()) {
    const Mesh& mesh = q_space_->mesh();
    const int nq = q_space_->dofs_per_cell();
    CellIntegrator integ(q_space_->basis(), 2 * multiplier_degree(*q_space_));
    local_inverse_mass_.resize(static_cast<std::size_t>(mesh.num_triangles()) * nq * nq);
    std::vector<double> m;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      local_mass(integ.reinit(mesh, t), nq, m);
      const auto inv = invert_spd(m, nq);
      std::copy(inv.begin(), inv.end(), local_inverse_mass_.begin() + static_cast<std::size_t>(t) * nq * nq);
    }
  }
}

std::vector<double> GradientProjector::solve_mass(std::span<const double> rhs, std::span<const double> guess) const {
  const int n = q_space_->ndof();
  if (static_cast<int>(rhs.size()) != n) throw InvalidArgument("GradientProjector: dimension mismatch");
  if (q_space_->continuous()) {
    CgConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.max_iter = 10 * n + 100;
    return cg_solve(mass_, rhs, cfg, guess).x;
  }
  std::vector<double> x(n, 0.0);
  const Mesh& mesh = q_space_->mesh();
  const int nq = q_space_->dofs_per_cell();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto dofs = q_space_->cell_dofs(t);
    const double* inv = local_inverse_mass_.data() + static_cast<std::size_t>(t) * nq * nq;
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < nq; ++j)
        for (int c = 0; c < 2; ++c) x[2 * dofs[i] + c] += inv[i * nq + j] * rhs[2 * dofs[j] + c];
  }
  return x;
}

std::vector<double> GradientProjector::apply(std::span<const double> u, std::span<const double> guess) const {
  return solve_mass(coupling_.multiply_transpose(u), guess);
}

VectorField project_gradient(const ScalarField& u, std::shared_ptr<const FeSpace> q_space) {
  if (!u.space || !q_space) throw InvalidArgument("project_gradient: missing space");
  const GradientProjector proj(u.space, q_space);
  return {q_space, proj.apply(u.coeffs), false};
}

FieldEval eval_field(const ScalarField& u, int tri, RefPoint p) {
  const FeSpace& s = *u.space;
  const int nb = s.dofs_per_cell();
  std::vector<double> vals(nb);
  std::vector<std::array<double, 2>> rg(nb);
  eval_reference_basis(s.basis(), p, vals, rg, {});
  const MapEval m = ElementMap(s.mesh(), tri).eval(p);
  const auto dofs = s.cell_dofs(tri);
  FieldEval out;
  for (int i = 0; i < nb; ++i) {
    std::array<double, 2> g;
    push_forward(m, rg[i], {0, 0, 0}, g, nullptr);
    const double c = u.coeffs[dofs[i]];
    out.value += c * vals[i];
    out.grad[0] += c * g[0];
    out.grad[1] += c * g[1];
  }
  return out;
}

Point eval_multiplier(const VectorField& lam, int tri, RefPoint p) {
  const FeSpace& s = *lam.space;
  const int nb = s.dofs_per_cell();
  std::vector<double> vals(nb);
  eval_reference_basis(s.basis(), p, vals, {}, {});
  const auto dofs = s.cell_dofs(tri);
  Point out;
  for (int i = 0; i < nb; ++i) {
    out.x += vals[i] * lam.coeffs[2 * dofs[i]];
    out.y += vals[i] * lam.coeffs[2 * dofs[i] + 1];
  }
  return out;
}

}  // namespace bingham
