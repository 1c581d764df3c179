#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bingham/common.hpp"

namespace bingham {

/// How a triangle came into existence. Closure-born (green/blue) triangles are
/// never split green/blue again; they are red-refined instead.
enum class RefinementTag : std::uint8_t { Original, Red, Green, Blue };

struct Edge {
  std::array<int, 2> v{};           // v[0] < v[1]
  std::array<int, 2> tris{-1, -1};  // tris[1] == -1 on the boundary
  bool boundary() const { return tris[1] < 0; }
};

using Triangle = std::array<int, 3>;
using CurvedNodes = std::map<std::pair<int, int>, Point>;

/// Conforming triangulation with edge connectivity. Local edge k of a triangle
/// joins its local vertices k and (k+1)%3. Boundary edges may carry a
/// mid-edge geometry node which turns the adjacent triangle into a quadratic
/// (curved) element. Immutable after construction.
class Mesh {
 public:
  Mesh() = default;

  /// Curved nodes are keyed by the (unordered) vertex pair of a boundary edge.
  /// When `boundary_radius` is set, the domain boundary is the circle of that
  /// radius centred at the origin and refinement snaps new boundary vertices to it.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
       const CurvedNodes& curved = {}, std::vector<RefinementTag> tags = {},
       std::optional<double> boundary_radius = std::nullopt);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Point& vertex(int i) const { return vertices_[i]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  const std::vector<char>& boundary_vertex_flags() const { return boundary_vertex_; }
  const std::optional<Point>& curved_node(int e) const { return curved_[e]; }
  bool is_curved(int t) const;
  int num_curved_edges() const;
  CurvedNodes curved_nodes() const;
  RefinementTag tag(int t) const { return tags_[t]; }
  const std::vector<RefinementTag>& tags() const { return tags_; }
  std::optional<double> boundary_radius() const { return boundary_radius_; }

  /// Edge index joining vertices a and b, or -1.
  int find_edge(int a, int b) const;

  double edge_length(int e) const;
  /// Element diameter h_T (longest vertex-to-vertex distance).
  double diameter(int t) const;
  double h_max() const;
  /// Signed area of the straight-sided triangle through the three vertices.
  double signed_area(int t) const;
  /// Smallest interior angle over all triangles, in degrees.
  double min_angle_deg() const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<char> boundary_vertex_;
  std::vector<std::optional<Point>> curved_;
  std::vector<RefinementTag> tags_;
  std::optional<double> boundary_radius_;
};

struct ConformityReport {
  int overused_edges = 0;     // edges shared by more than two triangles
  int hanging_nodes = 0;      // vertices lying strictly inside some edge
  int inverted_triangles = 0; // non-positive signed area
  int bad_boundary_vertices = 0;  // boundary vertices without exactly two boundary edges
  int euler_characteristic = 0;
  bool ok() const {
    return overused_edges == 0 && hanging_nodes == 0 && inverted_triangles == 0 &&
           bad_boundary_vertices == 0 && euler_characteristic == 1;
  }
};

ConformityReport check_conformity(const Mesh& mesh);

/// Unit square split into n x n cells, each cut along its rising diagonal.
Mesh generate_square(int n);

/// Disk of radius R: a fixed 24-triangle coarse mesh refined `levels` times.
/// With `curved`, every boundary edge carries an arc-midpoint geometry node;
/// otherwise the domain is the inscribed polygon (boundary vertices still on the circle).
Mesh generate_circle(int levels, double radius, bool curved = true);

/// Red split of every triangle.
Mesh uniform_refine(const Mesh& mesh);

/// Red-green-blue refinement of the marked triangles with longest-edge
/// reference edges and conforming closure.
Mesh rgb_refine(const Mesh& mesh, const std::set<int>& marked);

/// Gauss-Seidel Laplacian smoothing of interior vertices. A move that would
/// invert an incident element is rejected.
Mesh laplacian_smooth(const Mesh& mesh, int iters);

void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

}  // namespace bingham
