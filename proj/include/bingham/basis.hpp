#pragma once

#include <array>
#include <span>
#include <vector>

#include "bingham/geometry.hpp"

namespace bingham {

/// Reference element bases. Local ordering: vertex functions, then edge
/// functions by local edge (k, k+1) (P3: node nearer k first), then interior.
enum class BasisKind { P0, P1, P2, P3, P1Bubble };

int basis_size(BasisKind kind);
/// Highest total polynomial degree in the basis (the MINI bubble is cubic).
int basis_degree(BasisKind kind);
/// Barycentric coordinates of the Lagrange node of each local function.
/// The bubble's node is the centroid.
std::vector<std::array<double, 3>> reference_nodes(BasisKind kind);

/// Values, reference gradients and reference Hessians (xixi, xieta, etaeta).
/// Spans must have basis_size(kind) entries; grads/hess may be empty.
void eval_reference_basis(BasisKind kind, RefPoint p, std::span<double> values,
                          std::span<std::array<double, 2>> grads,
                          std::span<std::array<double, 3>> hess);

/// Basis tabulated at the points of a rule.
struct BasisTable {
  int num_points = 0;
  int num_basis = 0;
  std::vector<double> values;                 // [q * nb + i]
  std::vector<std::array<double, 2>> grads;   // reference gradients
  std::vector<std::array<double, 3>> hess;    // reference Hessians
  double value(int q, int i) const { return values[q * num_basis + i]; }
  const std::array<double, 2>& grad(int q, int i) const { return grads[q * num_basis + i]; }
  const std::array<double, 3>& hessian(int q, int i) const { return hess[q * num_basis + i]; }
};

BasisTable tabulate(BasisKind kind, std::span<const RefPoint> points);

}  // namespace bingham
