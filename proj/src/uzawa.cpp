#include "bingham/uzawa.hpp"

#include <cmath>
#include <string>

#include "bingham/cholesky.hpp"

namespace bingham {

void BinghamParams::validate() const {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(g >= 0.0)) throw InvalidArgument("g must be non-negative");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (!(cg_tol > 0.0)) throw InvalidArgument("cg_tol must be positive");
  if (max_uzawa_iter < 1) throw InvalidArgument("max_uzawa_iter must be at least 1");
  if (!f) throw InvalidArgument("load function is empty");
}

Point project_ball(Point v) {
  const double n = norm(v);
  return n <= 1.0 ? v : Point{v.x / n, v.y / n};
}

void project_nodal(std::vector<double>& coeffs) {
  for (std::size_t j = 0; j + 1 < coeffs.size(); j += 2) {
    const Point p = project_ball({coeffs[j], coeffs[j + 1]});
    coeffs[j] = p.x;
    coeffs[j + 1] = p.y;
  }
}

bool nodally_admissible(const std::vector<double>& coeffs, double slack) {
  for (std::size_t j = 0; j + 1 < coeffs.size(); j += 2)
    if (std::hypot(coeffs[j], coeffs[j + 1]) > 1.0 + slack) return false;
  return true;
}

namespace {

double energy_norm(const SparseMatrix& K, const std::vector<double>& x) {
  const auto kx = K * x;
  return std::sqrt(std::max(0.0, dot(x, kx)));
}

}  // namespace

UzawaResult uzawa_solve(std::shared_ptr<const Mesh> mesh, const ElementFamily& family, const BinghamParams& p,
                        const std::optional<UzawaInit>& init) {
  p.validate();
  if (!mesh) throw InvalidArgument("uzawa_solve: null mesh");
  auto vs = build_space(mesh, family, Role::Velocity);
  auto qs = build_space(mesh, family, Role::Multiplier);
  const int nu = vs->ndof(), nq = qs->ndof();

  const SparseMatrix K = assemble_stiffness(*vs, 1.0);
  SparseMatrix A = K;
  for (double& v : A.mutable_values()) v *= p.mu;
  const std::vector<double> load = assemble_load(*vs, p.f);
  auto [Ad, rhs0] = apply_dirichlet(A, load, *vs);
  const GradientProjector proj(vs, qs);
  const SparseMatrix& B = proj.coupling();

  std::vector<double> u(nu, 0.0), lam(nq, 0.0);
  if (init) {
    if (static_cast<int>(init->u.size()) != nu || static_cast<int>(init->lambda.size()) != nq)
      throw InvalidArgument("uzawa_solve: initial guess does not match the spaces");
    u = init->u;
    lam = init->lambda;
    if (!nodally_admissible(lam)) throw InvalidArgument("uzawa_solve: initial multiplier is not admissible");
    for (int d : vs->boundary_dofs()) u[d] = 0.0;
  }

  CgConfig cg;
  cg.rel_tol = p.cg_tol;
  std::optional<SparseCholesky> chol;
  if (p.inner_solver == InnerSolver::Cholesky) chol.emplace(Ad);
  UzawaResult res;
  auto solve_velocity = [&](const std::vector<double>& l, const std::vector<double>& guess) {
    std::vector<double> rhs = load;
    if (p.g != 0.0) {
      const auto bl = B * l;
      for (int i = 0; i < nu; ++i) rhs[i] -= p.g * bl[i];
    }
    for (int d : vs->boundary_dofs()) rhs[d] = 0.0;
    if (chol) return chol->solve(rhs);
    auto r = cg_solve(Ad, rhs, cg, guess);
    res.cg_iterations += r.iterations;
    return std::move(r.x);
  };

  std::vector<double> pig;
  double prev_norm = energy_norm(K, u);
  for (int it = 1; it <= p.max_uzawa_iter; ++it) {
    std::vector<double> un = solve_velocity(lam, u);
    std::vector<double> d(nu);
    for (int i = 0; i < nu; ++i) d[i] = un[i] - u[i];
    const double inc_abs = energy_norm(K, d);
    const double inc = prev_norm < 1e-14 ? inc_abs : inc_abs / prev_norm;
    u = std::move(un);
    prev_norm = energy_norm(K, u);
    res.iterations = it;
    res.increments.push_back(inc);
    if (p.g == 0.0) {
      // The multiplier does not enter the velocity equation.
      res.converged = true;
      break;
    }
    pig = proj.apply(u, pig);
    for (int j = 0; j < nq; ++j) lam[j] += p.rho * pig[j];
    project_nodal(lam);
    if (inc < p.tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged)
    throw NonConvergenceError("uzawa_solve: no convergence after " + std::to_string(p.max_uzawa_iter) +
                                  " iterations",
                              res.increments);
  if (p.g != 0.0) u = solve_velocity(lam, u);

  res.u = {vs, std::move(u)};
  res.lambda = {qs, std::move(lam), true};
  return res;
}

}  // namespace bingham
