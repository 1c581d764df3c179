#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "bingham/geometry.hpp"
#include "bingham/mesh.hpp"
#include "bingham/quadrature.hpp"

using namespace bingham;

namespace {

double angle_at(Point a, Point b, Point c) {
  const Point u = b - a, v = c - a;
  return std::acos(std::clamp(dot(u, v) / (norm(u) * norm(v)), -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

double min_angle(const Mesh& m) {
  double best = 180.0;
  for (const auto& t : m.triangles())
    for (int k = 0; k < 3; ++k)
      best = std::min(best, angle_at(m.vertex(t[k]), m.vertex(t[(k + 1) % 3]), m.vertex(t[(k + 2) % 3])));
  return best;
}

// Brute force: a vertex strictly inside a triangle side is a hanging node.
int brute_force_hanging(const Mesh& m) {
  int count = 0;
  for (const auto& t : m.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const Point a = m.vertex(t[k]), b = m.vertex(t[(k + 1) % 3]);
      const double len = norm(b - a);
      for (int v = 0; v < m.num_vertices(); ++v) {
        if (v == t[k] || v == t[(k + 1) % 3]) continue;
        const Point p = m.vertex(v);
        const double s = dot(p - a, b - a) / (len * len);
        if (s <= 1e-9 || s >= 1 - 1e-9) continue;
        if (std::abs(cross(b - a, p - a)) / len < 1e-10 * len) ++count;
      }
    }
  }
  return count;
}

// Each undirected side must be used by one or two triangles.
bool sides_shared_properly(const Mesh& m) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : m.triangles())
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  return std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 1 || kv.second == 2; });
}

double total_area(const Mesh& m) {
  double a = 0;
  for (int t = 0; t < m.num_triangles(); ++t) a += m.signed_area(t);
  return a;
}

// Area enclosed by a triangle whose boundary edges may be parabolic arcs: the
// straight area plus 2/3 * chord * (outward offset of the mid node).
double quadratic_area_oracle(const Mesh& m, int t) {
  double a = m.signed_area(t);
  const auto& tri = m.triangle(t);
  for (int k = 0; k < 3; ++k) {
    const int e = m.triangle_edges(t)[k];
    const auto& c = m.curved_node(e);
    if (!c) continue;
    const Point p = m.vertex(tri[k]), q = m.vertex(tri[(k + 1) % 3]);
    const Point d = q - p;
    const Point outward{d.y / norm(d), -d.x / norm(d)};
    a += 2.0 / 3.0 * norm(d) * dot(*c - midpoint(p, q), outward);
  }
  return a;
}

std::set<std::vector<long long>> canonical_triangles(const Mesh& m) {
  auto key = [](Point p) { return std::llround(p.x * 1e9) * 4000000000LL + std::llround(p.y * 1e9); };
  std::set<std::vector<long long>> out;
  for (const auto& t : m.triangles()) {
    std::vector<long long> v{key(m.vertex(t[0])), key(m.vertex(t[1])), key(m.vertex(t[2]))};
    std::sort(v.begin(), v.end());
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(GenerateSquare, SmallestMesh) {
  const Mesh m = generate_square(1);
  EXPECT_EQ(m.num_vertices(), 4);
  EXPECT_EQ(m.num_triangles(), 2);
  EXPECT_EQ(m.num_edges(), 5);
  int boundary = 0;
  for (const auto& e : m.edges()) boundary += e.boundary();
  EXPECT_EQ(boundary, 4);
}

TEST(GenerateSquare, Counts) {
  const Mesh m = generate_square(2);
  EXPECT_EQ(m.num_vertices(), 9);
  EXPECT_EQ(m.num_triangles(), 8);
}

TEST(GenerateSquare, RightIsoscelesAngles) {
  const Mesh m = generate_square(4);
  EXPECT_EQ(m.num_triangles(), 32);
  EXPECT_NEAR(min_angle(m), 45.0, 1e-10);
  EXPECT_NEAR(m.min_angle_deg(), 45.0, 1e-10);
}

TEST(GenerateSquare, RejectsZero) { EXPECT_THROW(generate_square(0), InvalidArgument); }

TEST(GenerateSquare, CcwAndConforming) {
  const Mesh m = generate_square(5);
  for (int t = 0; t < m.num_triangles(); ++t) EXPECT_GT(m.signed_area(t), 0.0);
  EXPECT_NEAR(total_area(m), 1.0, 1e-14);
  EXPECT_TRUE(check_conformity(m).ok());
  EXPECT_EQ(brute_force_hanging(m), 0);
}

TEST(GenerateCircle, CoarseBoundaryOnCircle) {
  const double R = 2.5;
  const Mesh m = generate_circle(0, R);
  int nb = 0;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!m.is_boundary_vertex(v)) continue;
    ++nb;
    const Point p = m.vertex(v);
    EXPECT_NEAR(p.x * p.x + p.y * p.y, R * R, 1e-14 * R * R);
  }
  EXPECT_GT(nb, 0);
  EXPECT_TRUE(check_conformity(m).ok());
}

TEST(GenerateCircle, CurvedNodesOnCircleAtAllLevels) {
  for (int lev = 0; lev <= 3; ++lev) {
    const Mesh m = generate_circle(lev, 1.0);
    int boundary_edges = 0;
    for (int e = 0; e < m.num_edges(); ++e) {
      if (!m.edge(e).boundary()) {
        EXPECT_FALSE(m.curved_node(e).has_value());
        continue;
      }
      ++boundary_edges;
      ASSERT_TRUE(m.curved_node(e).has_value());
      const Point c = *m.curved_node(e);
      EXPECT_NEAR(c.x * c.x + c.y * c.y, 1.0, 1e-14);
      // The node is the arc midpoint: equidistant from the edge ends.
      const Point a = m.vertex(m.edge(e).v[0]), b = m.vertex(m.edge(e).v[1]);
      EXPECT_NEAR(norm(c - a), norm(c - b), 1e-13);
    }
    EXPECT_EQ(boundary_edges, m.num_curved_edges());
    for (int v = 0; v < m.num_vertices(); ++v)
      if (m.is_boundary_vertex(v)) {
        EXPECT_NEAR(norm(m.vertex(v)), 1.0, 1e-14);
      }
  }
}

TEST(GenerateCircle, CurvedAreaCloseToPi) {
  const Mesh m = generate_circle(2, 1.0);
  const QuadratureRule rule = triangle_rule(4);
  double area = 0.0, oracle = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const ElementMap map(m, t);
    for (int q = 0; q < rule.size(); ++q) area += rule.weights[q] * std::abs(map.eval(from_barycentric(rule.points[q])).det);
    oracle += quadratic_area_oracle(m, t);
  }
  EXPECT_NEAR(area, oracle, 1e-12);
  EXPECT_LT(std::abs(area - std::numbers::pi) / std::numbers::pi, 0.01);
  // The straight-sided polygon misses more area than the curved representation.
  EXPECT_LT(std::abs(area - std::numbers::pi), std::abs(total_area(m) - std::numbers::pi));
}

TEST(GenerateCircle, RejectsBadArguments) {
  EXPECT_THROW(generate_circle(0, 0.0), InvalidArgument);
  EXPECT_THROW(generate_circle(1, -1.0), InvalidArgument);
  EXPECT_THROW(generate_circle(-1, 1.0), InvalidArgument);
}

TEST(UniformRefine, QuadruplesSquare) {
  const Mesh m = uniform_refine(generate_square(1));
  EXPECT_EQ(m.num_triangles(), 8);
  EXPECT_TRUE(check_conformity(m).ok());
}

TEST(UniformRefine, ChildrenHaveQuarterArea) {
  const Mesh parent({{0, 0}, {2, 0.3}, {0.4, 1.7}}, {{0, 1, 2}});
  const Mesh m = uniform_refine(parent);
  ASSERT_EQ(m.num_triangles(), 4);
  for (int t = 0; t < 4; ++t) EXPECT_NEAR(m.signed_area(t), parent.signed_area(0) / 4, 1e-15);
  EXPECT_NEAR(min_angle(m), min_angle(parent), 1e-10);
}

TEST(UniformRefine, CircleBoundarySnapped) {
  Mesh m = generate_circle(0, 1.0);
  for (int lev = 0; lev < 3; ++lev) {
    m = uniform_refine(m);
    for (int v = 0; v < m.num_vertices(); ++v)
      if (m.is_boundary_vertex(v)) {
        EXPECT_NEAR(m.vertex(v).x * m.vertex(v).x + m.vertex(v).y * m.vertex(v).y, 1.0, 1e-14);
      }
    for (const auto& [key, c] : m.curved_nodes()) EXPECT_NEAR(c.x * c.x + c.y * c.y, 1.0, 1e-14);
  }
}

TEST(UniformRefine, CircleDiameterHalves) {
  Mesh m = generate_circle(0, 1.0);
  double h = m.h_max();
  for (int lev = 0; lev < 4; ++lev) {
    m = uniform_refine(m);
    const double ratio = m.h_max() / h;
    EXPECT_GE(ratio, 0.45);
    EXPECT_LE(ratio, 0.55);
    h = m.h_max();
  }
}

TEST(UniformRefine, TwiceGivesSixteenfold) {
  const Mesh m0 = generate_circle(0, 1.0);
  std::set<int> all;
  for (int t = 0; t < m0.num_triangles(); ++t) all.insert(t);
  const Mesh m1 = rgb_refine(m0, all);
  std::set<int> all1;
  for (int t = 0; t < m1.num_triangles(); ++t) all1.insert(t);
  EXPECT_EQ(rgb_refine(m1, all1).num_triangles(), 16 * m0.num_triangles());
}

TEST(RgbRefine, EmptyMarkingIsNoOp) {
  const Mesh m = generate_circle(1, 1.0);
  const Mesh r = rgb_refine(m, {});
  EXPECT_EQ(r.num_triangles(), m.num_triangles());
  EXPECT_EQ(r.vertices().size(), m.vertices().size());
}

TEST(RgbRefine, AllMarkedMatchesUniform) {
  const Mesh m = generate_circle(1, 1.0);
  std::set<int> all;
  for (int t = 0; t < m.num_triangles(); ++t) all.insert(t);
  EXPECT_EQ(canonical_triangles(rgb_refine(m, all)), canonical_triangles(uniform_refine(m)));
}

TEST(RgbRefine, SingleMarkedSquareIsConforming) {
  const Mesh m = rgb_refine(generate_square(1), {0});
  const ConformityReport rep = check_conformity(m);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.hanging_nodes, 0);
  EXPECT_EQ(brute_force_hanging(m), 0);
  EXPECT_GT(m.num_triangles(), 4);
  EXPECT_NEAR(total_area(m), 1.0, 1e-14);
}

TEST(RgbRefine, RejectsOutOfRange) { EXPECT_THROW(rgb_refine(generate_square(1), {5}), InvalidArgument); }

TEST(RgbRefine, TenRandomAdaptiveRoundsStayConforming) {
  for (int geometry = 0; geometry < 2; ++geometry) {
    std::mt19937 rng(1234 + geometry);
    Mesh m = geometry == 0 ? generate_square(2) : generate_circle(0, 1.0);
    const double floor = 0.5 * min_angle(m) - 1e-9;
    for (int round = 0; round < 10; ++round) {
      std::set<int> marked;
      std::uniform_int_distribution<int> pick(0, m.num_triangles() - 1);
      const int count = 3;
      for (int i = 0; i < count; ++i) marked.insert(pick(rng));
      const int before = m.num_triangles();
      m = laplacian_smooth(rgb_refine(m, marked), 1);
      EXPECT_GT(m.num_triangles(), before);
      const ConformityReport rep = check_conformity(m);
      EXPECT_TRUE(rep.ok()) << "round " << round;
      EXPECT_TRUE(sides_shared_properly(m));
      EXPECT_EQ(brute_force_hanging(m), 0);
      for (int t = 0; t < m.num_triangles(); ++t) ASSERT_GT(m.signed_area(t), 0.0);
      if (geometry == 0) {
        EXPECT_NEAR(total_area(m), 1.0, 1e-12);
      }
      EXPECT_GE(m.min_angle_deg(), std::min(floor, 15.0)) << "round " << round;
    }
  }
}

TEST(RgbRefine, AdaptiveCircleKeepsBoundaryOnCircle) {
  Mesh m = generate_circle(0, 1.0);
  for (int round = 0; round < 4; ++round) {
    std::set<int> marked;
    for (int t = 0; t < m.num_triangles(); t += 3) marked.insert(t);
    m = laplacian_smooth(rgb_refine(m, marked), 1);
  }
  for (int v = 0; v < m.num_vertices(); ++v)
    if (m.is_boundary_vertex(v)) {
      EXPECT_NEAR(norm(m.vertex(v)), 1.0, 1e-14);
    }
  for (const auto& [key, c] : m.curved_nodes()) EXPECT_NEAR(norm(c), 1.0, 1e-14);
  EXPECT_TRUE(check_conformity(m).ok());
}

TEST(LaplacianSmooth, ZeroItersIsIdentity) {
  const Mesh m = rgb_refine(generate_circle(0, 1.0), {0, 5});
  const Mesh s = laplacian_smooth(m, 0);
  ASSERT_EQ(s.num_vertices(), m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    EXPECT_EQ(s.vertex(v).x, m.vertex(v).x);
    EXPECT_EQ(s.vertex(v).y, m.vertex(v).y);
  }
}

TEST(LaplacianSmooth, StructuredSquareIsFixedPoint) {
  const Mesh m = generate_square(6);
  const Mesh s = laplacian_smooth(m, 3);
  for (int v = 0; v < m.num_vertices(); ++v) {
    EXPECT_NEAR(s.vertex(v).x, m.vertex(v).x, 1e-14);
    EXPECT_NEAR(s.vertex(v).y, m.vertex(v).y, 1e-14);
  }
}

TEST(LaplacianSmooth, PreservesTopologyBoundaryAndPositivity) {
  Mesh m = generate_circle(1, 1.0);
  m = rgb_refine(m, {0, 1, 2, 40, 41});
  // Disturb interior vertices to give the smoother work.
  std::vector<Point> pos = m.vertices();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  for (int v = 0; v < m.num_vertices(); ++v)
    if (!m.is_boundary_vertex(v)) pos[v] = pos[v] + Point{jitter(rng), jitter(rng)};
  const Mesh d(pos, m.triangles(), m.curved_nodes(), m.tags(), m.boundary_radius());
  const Mesh s = laplacian_smooth(d, 5);
  EXPECT_EQ(s.num_vertices(), d.num_vertices());
  EXPECT_EQ(s.num_triangles(), d.num_triangles());
  EXPECT_EQ(s.num_edges(), d.num_edges());
  for (int t = 0; t < s.num_triangles(); ++t) {
    EXPECT_GT(s.signed_area(t), 0.0);
    EXPECT_EQ(s.triangle(t), d.triangle(t));
  }
  for (int v = 0; v < s.num_vertices(); ++v)
    if (d.is_boundary_vertex(v)) {
      EXPECT_EQ(s.vertex(v).x, d.vertex(v).x);
      EXPECT_EQ(s.vertex(v).y, d.vertex(v).y);
    }
  EXPECT_EQ(s.curved_nodes(), d.curved_nodes());
}

TEST(LaplacianSmooth, RejectsInvertingMoves) {
  // Star-shaped fan around vertex 0 whose neighbour mean lies outside the kernel.
  const Mesh m({{0.05, 0.02}, {1, 0}, {0.9, 0.9}, {0, 1}, {-1, 0}, {0, -1}},
               {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}});
  const Mesh s = laplacian_smooth(m, 10);
  for (int t = 0; t < s.num_triangles(); ++t) EXPECT_GT(s.signed_area(t), 0.0);
}

TEST(MeshConstruction, RejectsClockwiseAndBadIndices) {
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}), InvalidArgument);
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}), InvalidArgument);
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}), InvalidArgument);
}

TEST(MeshConstruction, EdgeBookkeeping) {
  const Mesh m = generate_circle(1, 1.0);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    EXPECT_LT(ed.v[0], ed.v[1]);
    EXPECT_GE(ed.tris[0], 0);
    EXPECT_EQ(m.find_edge(ed.v[1], ed.v[0]), e);
    for (int t : ed.tris) {
      if (t < 0) continue;
      const auto& te = m.triangle_edges(t);
      EXPECT_NE(std::find(te.begin(), te.end(), e), te.end());
    }
  }
  EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_triangles(), 1);
}

TEST(MeshIo, RoundTrip) {
  const Mesh m = rgb_refine(generate_circle(1, 1.0), {3, 17});
  std::stringstream ss;
  write_mesh(ss, m);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("vertices ", 0), 0u);
  EXPECT_NE(text.find("\ntriangles "), std::string::npos);
  EXPECT_NE(text.find("\ncurved "), std::string::npos);
  const Mesh r = read_mesh(ss);
  ASSERT_EQ(r.num_vertices(), m.num_vertices());
  ASSERT_EQ(r.num_triangles(), m.num_triangles());
  for (int v = 0; v < m.num_vertices(); ++v) {
    EXPECT_EQ(r.vertex(v).x, m.vertex(v).x);
    EXPECT_EQ(r.vertex(v).y, m.vertex(v).y);
  }
  for (int t = 0; t < m.num_triangles(); ++t) EXPECT_EQ(r.triangle(t), m.triangle(t));
  EXPECT_EQ(r.curved_nodes(), m.curved_nodes());
}

TEST(MeshIo, RejectsMalformed) {
  std::stringstream ss("vertices 2\n0 0\n");
  EXPECT_THROW(read_mesh(ss), InvalidArgument);
}
