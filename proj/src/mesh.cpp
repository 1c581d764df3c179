#include "bingham/mesh.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <tuple>

namespace bingham {

namespace {

struct EdgeKey {
  int a, b, tri, local;
};

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           const CurvedNodes& curved, std::vector<RefinementTag> tags,
           std::optional<double> boundary_radius)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      tags_(std::move(tags)),
      boundary_radius_(boundary_radius) {
  const int nv = num_vertices();
  const int nt = num_triangles();
  if (tags_.empty()) tags_.assign(nt, RefinementTag::Original);
  if (static_cast<int>(tags_.size()) != nt)
    throw InvalidArgument("mesh: tag count does not match triangle count");
  if (boundary_radius_ && !(*boundary_radius_ > 0.0))
    throw InvalidArgument("mesh: boundary radius must be positive");

  std::vector<EdgeKey> keys;
  keys.reserve(3 * nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv)
        throw InvalidArgument("mesh: vertex index out of range in triangle " + std::to_string(t));
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw InvalidArgument("mesh: degenerate triangle " + std::to_string(t));
    if (!(signed_area(t) > 0.0))
      throw InvalidArgument("mesh: triangle " + std::to_string(t) + " is not counter-clockwise");
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      keys.push_back({std::min(a, b), std::max(a, b), t, k});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const EdgeKey& l, const EdgeKey& r) {
    return std::tie(l.a, l.b, l.tri) < std::tie(r.a, r.b, r.tri);
  });

  tri_edges_.assign(nt, {-1, -1, -1});
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j].a == keys[i].a && keys[j].b == keys[i].b) ++j;
    if (j - i > 2) throw InvalidArgument("mesh: edge shared by more than two triangles");
    Edge e;
    e.v = {keys[i].a, keys[i].b};
    const int id = static_cast<int>(edges_.size());
    for (std::size_t k = i; k < j; ++k) {
      e.tris[k - i] = keys[k].tri;
      tri_edges_[keys[k].tri][keys[k].local] = id;
    }
    edges_.push_back(e);
    i = j;
  }

  boundary_vertex_.assign(nv, 0);
  for (const auto& e : edges_) {
    if (e.boundary()) boundary_vertex_[e.v[0]] = boundary_vertex_[e.v[1]] = 1;
  }

  curved_.assign(edges_.size(), std::nullopt);
  for (const auto& [pair, node] : curved) {
    const int e = find_edge(pair.first, pair.second);
    if (e < 0) throw InvalidArgument("mesh: curved node on a non-existent edge");
    if (!edges_[e].boundary()) throw InvalidArgument("mesh: curved node on an interior edge");
    curved_[e] = node;
  }
}

bool Mesh::is_curved(int t) const {
  for (int e : tri_edges_[t])
    if (curved_[e]) return true;
  return false;
}

int Mesh::num_curved_edges() const {
  return static_cast<int>(std::count_if(curved_.begin(), curved_.end(),
                                        [](const auto& c) { return c.has_value(); }));
}

CurvedNodes Mesh::curved_nodes() const {
  CurvedNodes out;
  for (int e = 0; e < num_edges(); ++e)
    if (curved_[e]) out[{edges_[e].v[0], edges_[e].v[1]}] = *curved_[e];
  return out;
}

int Mesh::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::array<int, 2>{a, b},
                             [](const Edge& e, const std::array<int, 2>& key) { return e.v < key; });
  if (it != edges_.end() && it->v[0] == a && it->v[1] == b) return static_cast<int>(it - edges_.begin());
  return -1;
}

double Mesh::edge_length(int e) const {
  return norm(vertices_[edges_[e].v[1]] - vertices_[edges_[e].v[0]]);
}

double Mesh::diameter(int t) const {
  const auto& tri = triangles_[t];
  double h = 0.0;
  for (int k = 0; k < 3; ++k)
    h = std::max(h, norm(vertices_[tri[(k + 1) % 3]] - vertices_[tri[k]]));
  return h;
}

double Mesh::h_max() const {
  double h = 0.0;
  for (int t = 0; t < num_triangles(); ++t) h = std::max(h, diameter(t));
  return h;
}

double Mesh::signed_area(int t) const {
  const auto& tri = triangles_[t];
  return 0.5 * cross(vertices_[tri[1]] - vertices_[tri[0]], vertices_[tri[2]] - vertices_[tri[0]]);
}

double Mesh::min_angle_deg() const {
  double amin = 180.0;
  for (const auto& tri : triangles_) {
    for (int k = 0; k < 3; ++k) {
      const Point p = vertices_[tri[k]];
      const Point u = vertices_[tri[(k + 1) % 3]] - p;
      const Point w = vertices_[tri[(k + 2) % 3]] - p;
      const double ang = std::atan2(std::abs(cross(u, w)), dot(u, w));
      amin = std::min(amin, ang * 180.0 / std::numbers::pi);
    }
  }
  return amin;
}

ConformityReport check_conformity(const Mesh& mesh) {
  ConformityReport rep;
  const int nv = mesh.num_vertices();
  for (int t = 0; t < mesh.num_triangles(); ++t)
    if (!(mesh.signed_area(t) > 0.0)) ++rep.inverted_triangles;

  // The constructor rejects edges with more than two triangles; recount anyway
  // from the triangle list so the report stands on its own.
  std::map<std::pair<int, int>, int> use;
  for (const auto& tri : mesh.triangles())
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++use[{a, b}];
    }
  for (const auto& [key, count] : use)
    if (count > 2) ++rep.overused_edges;

  std::vector<int> bdeg(nv, 0);
  std::vector<int> bedges;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary()) {
      ++bdeg[mesh.edge(e).v[0]];
      ++bdeg[mesh.edge(e).v[1]];
      bedges.push_back(e);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (bdeg[v] != 0 && bdeg[v] != 2) ++rep.bad_boundary_vertices;

  // A hanging node always sits strictly inside an edge seen by one triangle only.
  for (int e : bedges) {
    const Point a = mesh.vertex(mesh.edge(e).v[0]);
    const Point b = mesh.vertex(mesh.edge(e).v[1]);
    const Point d = b - a;
    const double len2 = dot(d, d);
    const double xmin = std::min(a.x, b.x), xmax = std::max(a.x, b.x);
    const double ymin = std::min(a.y, b.y), ymax = std::max(a.y, b.y);
    const double slack = 1e-12 * std::sqrt(len2);
    for (int v = 0; v < nv; ++v) {
      if (v == mesh.edge(e).v[0] || v == mesh.edge(e).v[1]) continue;
      const Point p = mesh.vertex(v);
      if (p.x < xmin - slack || p.x > xmax + slack || p.y < ymin - slack || p.y > ymax + slack) continue;
      const double s = dot(p - a, d) / len2;
      if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
      if (std::abs(cross(d, p - a)) <= 1e-10 * len2) ++rep.hanging_nodes;
    }
  }

  rep.euler_characteristic = nv - mesh.num_edges() + mesh.num_triangles();
  return rep;
}

Mesh generate_square(int n) {
  if (n < 1) throw InvalidArgument("generate_square: n must be >= 1");
  std::vector<Point> verts;
  verts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<Triangle> tris;
  tris.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return Mesh(std::move(verts), std::move(tris));
}

Mesh generate_circle(int levels, double radius, bool curved_boundary) {
  if (!(radius > 0.0)) throw InvalidArgument("generate_circle: radius must be positive");
  if (levels < 0) throw InvalidArgument("generate_circle: levels must be >= 0");
  const double pi = std::numbers::pi;
  // Centre, an inner ring of 6 vertices at R/2 and an outer ring of 12 on the circle.
  std::vector<Point> verts{{0.0, 0.0}};
  for (int k = 0; k < 6; ++k) {
    const double a = k * pi / 3.0;
    verts.push_back({0.5 * radius * std::cos(a), 0.5 * radius * std::sin(a)});
  }
  for (int k = 0; k < 12; ++k) {
    const double a = k * pi / 6.0;
    verts.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  auto inner = [](int k) { return 1 + (k % 6); };
  auto outer = [](int k) { return 7 + (k % 12); };
  std::vector<Triangle> tris;
  for (int k = 0; k < 6; ++k) tris.push_back({0, inner(k), inner(k + 1)});
  for (int k = 0; k < 6; ++k) {
    tris.push_back({inner(k), outer(2 * k), outer(2 * k + 1)});
    tris.push_back({inner(k), outer(2 * k + 1), inner(k + 1)});
    tris.push_back({inner(k + 1), outer(2 * k + 1), outer(2 * k + 2)});
  }
  CurvedNodes curved;
  for (int k = 0; k < 12 && curved_boundary; ++k) {
    const double a = (k + 0.5) * pi / 6.0;
    curved[{outer(k), outer(k + 1)}] = {radius * std::cos(a), radius * std::sin(a)};
  }
  Mesh mesh(std::move(verts), std::move(tris), curved, {}, radius);
  for (int l = 0; l < levels; ++l) mesh = uniform_refine(mesh);
  return mesh;
}

}  // namespace bingham
