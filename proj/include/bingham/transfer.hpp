#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bingham/assembly.hpp"

namespace bingham {

struct Location {
  int tri = -1;
  RefPoint ref;
};

/// Bucket-grid point location on a mesh. Points slightly outside every
/// element are attributed to the element they are closest to in barycentric
/// terms.
class PointLocator {
 public:
  explicit PointLocator(const Mesh& mesh, int buckets_per_side = 0);
  Location locate(Point x) const;

 private:
  const Mesh& mesh_;
  double x0_ = 0, y0_ = 0, dx_ = 1, dy_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
  std::optional<Location> try_cell(int t, Point x, double& best) const;
};

/// Interpolates a velocity field onto another space (another mesh of the same
/// domain). Boundary coefficients are set to zero.
std::vector<double> transfer_velocity(const ScalarField& u, const FeSpace& target);
/// Interpolates a multiplier at the target's nodes and projects each nodal
/// value onto the unit ball.
std::vector<double> transfer_multiplier(const VectorField& lam, const FeSpace& target);

}  // namespace bingham
