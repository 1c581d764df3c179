#pragma once

#include <set>
#include <span>
#include <vector>

#include "bingham/uzawa.hpp"

namespace bingham {

struct EstimatorReport {
  std::vector<double> eta_T_sq;    // per triangle
  std::vector<double> eta_E_sq;    // per edge, zero on boundary edges
  std::vector<double> eta_con_sq;  // per triangle, may be slightly negative
  std::vector<double> osc_sq;      // per triangle, h_T^2 ||f - mean_T f||^2 (diagnostic)
  bool robust_variant = false;

  double eta_T_total() const;
  double eta_E_total() const;
  /// sqrt(max(0, sum eta_con^2)).
  double eta_con_total() const;
  double osc_total() const;
  double eta_global() const;
};

/// Residual estimators of a discrete pair. With `robust`, the consistency term
/// pairs pi_h grad u_h with P(Lambda_h + rho pi_h grad u_h) instead of Lambda_h;
/// `pi_grad` may supply pi_h grad u_h to skip recomputing it.
EstimatorReport estimate(const ScalarField& u, const VectorField& lam, const BinghamParams& p, bool robust = false,
                         std::span<const double> pi_grad = {});

/// E_T = sqrt(eta_T^2 + sum over edges of T of (eta_E / 2)^2 + eta_con^2).
std::vector<double> element_indicators(const EstimatorReport& report, const Mesh& mesh);
/// {T : E_T > theta * max E}.
std::set<int> mark_indicators(std::span<const double> indicators, double theta = 0.5);
std::set<int> mark(const EstimatorReport& report, const Mesh& mesh, double theta = 0.5);

}  // namespace bingham
