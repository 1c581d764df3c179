#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "bingham/assembly.hpp"
#include "bingham/cg.hpp"
#include "bingham/error_norms.hpp"
#include "bingham/exact.hpp"
#include "bingham/mesh.hpp"
#include "bingham/transfer.hpp"
#include "bingham/uzawa.hpp"

using namespace bingham;

namespace {

const FamilyTag kFamilies[] = {FamilyTag::P2P0, FamilyTag::P3P1, FamilyTag::MINI};

BinghamParams circle_params(double f = 0.5, double g = 0.1) {
  BinghamParams p;
  p.mu = 1.0;
  p.g = g;
  p.f = [f](Point) { return f; };
  p.rho = 10.0;
  p.tol = 1e-7;
  return p;
}

std::shared_ptr<const Mesh> circle(int levels) { return std::make_shared<const Mesh>(generate_circle(levels, 1.0)); }

double grad_norm(const ScalarField& u) {
  const auto K = assemble_stiffness(*u.space, 1.0);
  return std::sqrt(dot(u.coeffs, K * u.coeffs));
}

// One solve per family on the level-1 disk, shared by the property tests.
const UzawaResult& solved(FamilyTag tag) {
  static std::map<FamilyTag, UzawaResult> cache;
  auto it = cache.find(tag);
  if (it == cache.end()) it = cache.emplace(tag, uzawa_solve(circle(1), ElementFamily::from_tag(tag), circle_params())).first;
  return it->second;
}

}  // namespace

TEST(ProjectBall, Examples) {
  EXPECT_EQ(project_ball({0.3, 0.4}), (Point{0.3, 0.4}));
  const Point p = project_ball({3, 4});
  EXPECT_NEAR(p.x, 0.6, 1e-15);
  EXPECT_NEAR(p.y, 0.8, 1e-15);
  EXPECT_EQ(project_ball({0, 0}), (Point{0, 0}));
}

TEST(ProjectBall, IdempotentAndContracting) {
  std::mt19937 rng(1);
  std::normal_distribution<double> d(0.0, 2.0);
  for (int n = 0; n < 1000; ++n) {
    const Point v{d(rng), d(rng)};
    const Point p = project_ball(v);
    EXPECT_LE(norm(p), 1.0 + 1e-15);
    const Point pp = project_ball(p);
    EXPECT_NEAR(pp.x, p.x, 1e-15);
    EXPECT_NEAR(pp.y, p.y, 1e-15);
  }
  std::vector<double> c = {3, 4, 0.1, 0.2, 0, -2};
  project_nodal(c);
  EXPECT_TRUE(nodally_admissible(c));
  EXPECT_NEAR(c[0], 0.6, 1e-15);
  EXPECT_EQ(c[2], 0.1);
  EXPECT_EQ(c[5], -1.0);
  EXPECT_FALSE(nodally_admissible({1.0, 1e-5}));
}

TEST(Uzawa, ZeroYieldIsPlainPoisson) {
  const auto m = circle(1);
  for (FamilyTag tag : kFamilies) {
    auto p = circle_params(0.5, 0.0);
    const auto r = uzawa_solve(m, ElementFamily::from_tag(tag), p);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_TRUE(r.converged);
    // Independent solve: CG on the eliminated system.
    const auto& vs = *r.u.space;
    const auto [A, b] = apply_dirichlet(assemble_stiffness(vs, 1.0), assemble_load(vs, p.f), vs);
    const auto ref = cg_solve(A, b, {1e-15, 0, Preconditioner::Jacobi});
    for (int i = 0; i < vs.ndof(); ++i) EXPECT_NEAR(r.u.coeffs[i], ref.x[i], 1e-12);
  }
}

TEST(Uzawa, ZeroYieldP2ConvergesQuadratically) {
  // g = 0, f = 4: u = 1 - r^2. The isoparametric boundary keeps the H1 error at O(h^2).
  const CircleExact c{1.0, 4.0, 0.0, 1.0};
  std::vector<double> err;
  for (int level = 1; level <= 3; ++level)
    err.push_back(h1_error(uzawa_solve(circle(level), ElementFamily::from_tag(FamilyTag::P2P0), circle_params(4.0, 0.0)).u, c).full);
  EXPECT_GT(std::log2(err[0] / err[1]), 1.8);
  EXPECT_GT(std::log2(err[1] / err[2]), 1.8);
}

TEST(Uzawa, InnerSolversAgree) {
  const auto m = circle(1);
  auto p = circle_params();
  const auto a = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P2P0), p);
  p.inner_solver = InnerSolver::Cg;
  p.cg_tol = 1e-14;
  const auto b = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P2P0), p);
  EXPECT_NEAR(a.iterations, b.iterations, 2);
  for (std::size_t i = 0; i < a.u.coeffs.size(); ++i) EXPECT_NEAR(a.u.coeffs[i], b.u.coeffs[i], 1e-9);
  EXPECT_GT(b.cg_iterations, 0);
  EXPECT_EQ(a.cg_iterations, 0);
}

TEST(Uzawa, FullyPluggedPipeHasNoFlow) {
  // R_p = 2g/f = 2 > R = 1. P3P1 on the inscribed polygon admits u_h = 0 exactly.
  for (int level = 0; level <= 2; ++level) {
    const auto m = std::make_shared<const Mesh>(generate_circle(level, 1.0, false));
    const auto r = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P3P1), circle_params(0.1, 0.1));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(grad_norm(r.u), 1e-6) << level;
  }
}

TEST(Uzawa, P2P0PlugLeavesGradientKernelMode) {
  // P2 functions with zero mean gradient on every cell exist (one per interior
  // vertex), so the discrete plug only forces pi_h grad u_h = 0.
  double prev = INFINITY;
  for (int level = 0; level <= 2; ++level) {
    const auto m = std::make_shared<const Mesh>(generate_circle(level, 1.0, false));
    const auto r = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P2P0), circle_params(0.1, 0.1));
    const double gn = grad_norm(r.u);
    const auto pg = project_gradient(r.u, r.lambda.space);
    double pg_max = 0.0;
    for (double v : pg.coeffs) pg_max = std::max(pg_max, std::abs(v));
    EXPECT_GT(gn, 1e-4);
    EXPECT_LT(gn, prev);
    EXPECT_LE(pg_max, 1e-6);
    prev = gn;
  }
}

TEST(Uzawa, H1ErrorDecreasesUnderRefinement) {
  const CircleExact c{1.0, 0.5, 0.1, 1.0};
  double prev = INFINITY;
  for (int level = 0; level <= 3; ++level) {
    const auto r = uzawa_solve(circle(level), ElementFamily::from_tag(FamilyTag::P2P0), circle_params());
    const double e = h1_error(r.u, c).full;
    EXPECT_LT(e, prev) << level;
    prev = e;
  }
}

TEST(Uzawa, MultiplierIsAdmissible) {
  for (FamilyTag tag : kFamilies) {
    const auto& r = solved(tag);
    EXPECT_TRUE(r.lambda.admissible);
    for (std::size_t j = 0; j + 1 < r.lambda.coeffs.size(); j += 2)
      EXPECT_LE(std::hypot(r.lambda.coeffs[j], r.lambda.coeffs[j + 1]), 1.0 + 1e-12);
  }
}

TEST(Uzawa, DiscreteVariationalInequality) {
  std::mt19937 rng(17);
  std::normal_distribution<double> d(0.0, 1.0);
  const double g = 0.1;
  for (FamilyTag tag : kFamilies) {
    const auto& r = solved(tag);
    const auto& vs = r.u.space;
    const auto& qs = r.lambda.space;
    const auto B = assemble_coupling(*vs, *qs);
    const auto Btu = B.multiply_transpose(r.u.coeffs);
    const double eps = 1e-5 * grad_norm(r.u);
    for (int n = 0; n < 100; ++n) {
      std::vector<double> mu(qs->ndof());
      for (double& v : mu) v = d(rng);
      project_nodal(mu);
      double s = 0.0;
      for (std::size_t j = 0; j < mu.size(); ++j) s += Btu[j] * (mu[j] - r.lambda.coeffs[j]);
      EXPECT_LE(g * s, eps);
    }
  }
}

TEST(Uzawa, GalerkinOrthogonality) {
  const double g = 0.1;
  for (FamilyTag tag : kFamilies) {
    const auto& r = solved(tag);
    const auto& vs = *r.u.space;
    const auto Au = assemble_stiffness(vs, 1.0) * r.u.coeffs;
    const auto Bl = assemble_coupling(vs, *r.lambda.space) * r.lambda.coeffs;
    const auto b = assemble_load(vs, [](Point) { return 0.5; });
    for (int i = 0; i < vs.ndof(); ++i) {
      if (vs.is_boundary_dof(i)) {
        EXPECT_EQ(r.u.coeffs[i], 0.0);
        continue;
      }
      EXPECT_NEAR(Au[i] + g * Bl[i] - b[i], 0.0, 1e-9);
    }
  }
}

TEST(Uzawa, IncrementsReachTolerance) {
  for (FamilyTag tag : kFamilies) {
    const auto& r = solved(tag);
    ASSERT_FALSE(r.increments.empty());
    EXPECT_EQ(static_cast<int>(r.increments.size()), r.iterations);
    EXPECT_LT(r.increments.back(), 1e-7);
    for (std::size_t k = 0; k + 1 < r.increments.size(); ++k) EXPECT_GE(r.increments[k], 1e-7);
  }
}

TEST(Uzawa, Deterministic) {
  const auto m = circle(1);
  const auto a = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P3P1), circle_params());
  const auto b = uzawa_solve(m, ElementFamily::from_tag(FamilyTag::P3P1), circle_params());
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.u.coeffs, b.u.coeffs);
  EXPECT_EQ(a.lambda.coeffs, b.lambda.coeffs);
}

TEST(Uzawa, WarmStartFromSolutionConvergesImmediately) {
  const auto& r = solved(FamilyTag::P2P0);
  const auto w = uzawa_solve(r.u.space->mesh_ptr(), ElementFamily::from_tag(FamilyTag::P2P0), circle_params(),
                             UzawaInit{r.u.coeffs, r.lambda.coeffs});
  EXPECT_LE(w.iterations, 3);
  for (std::size_t i = 0; i < r.u.coeffs.size(); ++i) EXPECT_NEAR(w.u.coeffs[i], r.u.coeffs[i], 1e-6);
}

TEST(Uzawa, Errors) {
  const auto m = circle(0);
  const auto fam = ElementFamily::from_tag(FamilyTag::P2P0);
  auto p = circle_params();
  p.max_uzawa_iter = 2;
  try {
    uzawa_solve(m, fam, p);
    FAIL() << "expected non-convergence";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.increments().size(), 2u);
  }
  auto bad = circle_params();
  bad.rho = 0.0;
  EXPECT_THROW(uzawa_solve(m, fam, bad), InvalidArgument);
  bad = circle_params();
  bad.mu = -1.0;
  EXPECT_THROW(uzawa_solve(m, fam, bad), InvalidArgument);
  bad = circle_params();
  bad.g = -0.1;
  EXPECT_THROW(uzawa_solve(m, fam, bad), InvalidArgument);
  bad = circle_params();
  bad.tol = 0.0;
  EXPECT_THROW(uzawa_solve(m, fam, bad), InvalidArgument);
  // Inadmissible or mis-sized initial guesses.
  const auto vs = build_space(m, fam, Role::Velocity);
  const auto qs = build_space(m, fam, Role::Multiplier);
  std::vector<double> lam(qs->ndof(), 0.0);
  lam[0] = 2.0;
  EXPECT_THROW(uzawa_solve(m, fam, circle_params(), UzawaInit{std::vector<double>(vs->ndof()), lam}), InvalidArgument);
  EXPECT_THROW(uzawa_solve(m, fam, circle_params(), UzawaInit{{1.0}, {}}), InvalidArgument);
}

TEST(Transfer, ReproducesPolynomialsAcrossMeshes) {
  // Fields vanishing on the unit square boundary are carried over exactly when representable.
  const auto coarse = std::make_shared<const Mesh>(generate_square(2));
  const auto fine = std::make_shared<const Mesh>(rgb_refine(*coarse, {0, 3}));
  auto fn = [](Point p) { return p.x * (1 - p.x) * p.y * (1 - p.y); };
  for (FamilyTag tag : {FamilyTag::P3P1}) {
    const auto fam = ElementFamily::from_tag(tag);
    const auto vc = build_space(coarse, fam, Role::Velocity);
    ScalarField u{vc, std::vector<double>(vc->ndof())};
    for (int d = 0; d < vc->ndof(); ++d) u.coeffs[d] = fn(vc->node_coords()[d]);
    const auto vf = build_space(fine, fam, Role::Velocity);
    const auto moved = transfer_velocity(u, *vf);
    // The coarse interpolant is a P3 function, so sampling it on the refinement is exact.
    PointLocator loc(*coarse);
    for (int d = 0; d < vf->ndof(); ++d) {
      const Point x = vf->node_coords()[d];
      const auto l = loc.locate(x);
      EXPECT_NEAR(moved[d], eval_field(u, l.tri, l.ref).value, 1e-12);
    }
  }
}

TEST(Transfer, MultiplierStaysAdmissible) {
  const auto& r = solved(FamilyTag::P3P1);
  const auto fine = std::make_shared<const Mesh>(uniform_refine(r.u.space->mesh()));
  const auto qf = build_space(fine, ElementFamily::from_tag(FamilyTag::P3P1), Role::Multiplier);
  const auto lam = transfer_multiplier(r.lambda, *qf);
  EXPECT_TRUE(nodally_admissible(lam));
  EXPECT_EQ(static_cast<int>(lam.size()), qf->ndof());
}
