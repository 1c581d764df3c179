#pragma once

#include <functional>

#include "bingham/assembly.hpp"
#include "bingham/exact.hpp"

namespace bingham {

struct H1Error {
  double semi = 0.0;  // ||grad(u - u_h)||_0
  double full = 0.0;  // ||u - u_h||_1
};

using VectorFunction = std::function<Point(Point)>;

H1Error h1_error(const ScalarField& u, const ScalarFunction& exact, const VectorFunction& exact_grad);
H1Error h1_error(const ScalarField& u, const CircleExact& c);

struct MultiplierError {
  double element_sq = 0.0;  // sum h_T^2 ||div(Lambda - Lambda_h)||^2_T
  double edge_sq = 0.0;     // sum over interior edges h_E ||[Lambda_h . n]||^2_E
  double value() const;
};

/// Mesh-dependent norm of div(Lambda - Lambda_h) for an exact multiplier with
/// continuous normal component; only its divergence is needed.
MultiplierError multiplier_error(const VectorField& lam, const ScalarFunction& exact_div);
MultiplierError multiplier_error(const VectorField& lam, const CircleExact& c);

}  // namespace bingham
