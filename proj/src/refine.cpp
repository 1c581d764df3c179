#include <algorithm>
#include <vector>

#include "bingham/geometry.hpp"
#include "bingham/mesh.hpp"

namespace bingham {

namespace {

// Local index of the longest edge; ties go to the lowest local index.
int reference_edge(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  int best = 0;
  double len = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double l = norm(mesh.vertex(tri[(k + 1) % 3]) - mesh.vertex(tri[k]));
    if (l > len * (1.0 + 1e-12)) {
      len = l;
      best = k;
    }
  }
  return best;
}

Point project_to_circle(Point p, double radius) {
  const double r = norm(p);
  return (radius / r) * p;
}

}  // namespace

Mesh rgb_refine(const Mesh& mesh, const std::set<int>& marked) {
  const int nt = mesh.num_triangles();
  const int ne = mesh.num_edges();
  std::vector<char> edge_marked(ne, 0);
  for (int t : marked) {
    if (t < 0 || t >= nt) throw InvalidArgument("rgb_refine: marked triangle out of range");
    for (int e : mesh.triangle_edges(t)) edge_marked[e] = 1;
  }
  if (marked.empty()) return mesh;

  std::vector<int> ref(nt);
  for (int t = 0; t < nt; ++t) ref[t] = reference_edge(mesh, t);

  // Closure: a triangle with any marked edge needs its reference edge marked;
  // closure-born triangles are only ever split red.
  for (bool changed = true; changed;) {
    changed = false;
    for (int t = 0; t < nt; ++t) {
      const auto& te = mesh.triangle_edges(t);
      const int count = edge_marked[te[0]] + edge_marked[te[1]] + edge_marked[te[2]];
      if (count == 0 || count == 3) continue;
      const RefinementTag tag = mesh.tag(t);
      if (tag == RefinementTag::Green || tag == RefinementTag::Blue) {
        for (int e : te) edge_marked[e] = 1;
        changed = true;
      } else if (!edge_marked[te[ref[t]]]) {
        edge_marked[te[ref[t]]] = 1;
        changed = true;
      }
    }
  }

  std::vector<Point> verts = mesh.vertices();
  std::vector<int> mid(ne, -1);
  const auto radius = mesh.boundary_radius();
  for (int e = 0; e < ne; ++e) {
    if (!edge_marked[e]) continue;
    const auto& ed = mesh.edge(e);
    Point p = midpoint(mesh.vertex(ed.v[0]), mesh.vertex(ed.v[1]));
    if (const auto& c = mesh.curved_node(e)) {
      p = *c;
    } else if (radius && ed.boundary()) {
      p = project_to_circle(p, *radius);
    }
    mid[e] = static_cast<int>(verts.size());
    verts.push_back(p);
  }

  std::vector<Triangle> tris;
  std::vector<RefinementTag> tags;
  tris.reserve(4 * nt);
  tags.reserve(4 * nt);
  auto emit = [&](int a, int b, int c, RefinementTag tag) {
    tris.push_back({a, b, c});
    tags.push_back(tag);
  };
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    const int count = edge_marked[te[0]] + edge_marked[te[1]] + edge_marked[te[2]];
    if (count == 0) {
      emit(tri[0], tri[1], tri[2], mesh.tag(t));
      continue;
    }
    if (count == 3) {
      const int m01 = mid[te[0]], m12 = mid[te[1]], m20 = mid[te[2]];
      emit(tri[0], m01, m20, RefinementTag::Red);
      emit(m01, tri[1], m12, RefinementTag::Red);
      emit(m20, m12, tri[2], RefinementTag::Red);
      emit(m01, m12, m20, RefinementTag::Red);
      continue;
    }
    const int k = ref[t];
    const int a = tri[k], b = tri[(k + 1) % 3], c = tri[(k + 2) % 3];
    const int m = mid[te[k]];
    if (count == 1) {
      emit(a, m, c, RefinementTag::Green);
      emit(m, b, c, RefinementTag::Green);
    } else if (edge_marked[te[(k + 1) % 3]]) {
      const int mbc = mid[te[(k + 1) % 3]];
      emit(a, m, c, RefinementTag::Blue);
      emit(m, b, mbc, RefinementTag::Blue);
      emit(m, mbc, c, RefinementTag::Blue);
    } else {
      const int mca = mid[te[(k + 2) % 3]];
      emit(m, b, c, RefinementTag::Blue);
      emit(a, m, mca, RefinementTag::Blue);
      emit(m, c, mca, RefinementTag::Blue);
    }
  }

  CurvedNodes curved;
  for (int e = 0; e < ne; ++e) {
    const auto& c = mesh.curved_node(e);
    if (!c) continue;
    const auto& ed = mesh.edge(e);
    if (!edge_marked[e]) {
      curved[{ed.v[0], ed.v[1]}] = *c;
      continue;
    }
    for (int end : ed.v) {
      Point node = midpoint(verts[end], verts[mid[e]]);
      if (radius) node = project_to_circle(node, *radius);
      curved[{std::min(end, mid[e]), std::max(end, mid[e])}] = node;
    }
  }
  return Mesh(std::move(verts), std::move(tris), curved, std::move(tags), radius);
}

Mesh uniform_refine(const Mesh& mesh) {
  std::set<int> all;
  for (int t = 0; t < mesh.num_triangles(); ++t) all.insert(all.end(), t);
  return rgb_refine(mesh, all);
}

namespace {

// Positive Jacobian at the vertices, edge midpoints and centroid of every
// element incident to v, with v placed at p.
bool valid_after_move(const Mesh& mesh, const std::vector<Point>& pos,
                      const std::vector<int>& incident, int v, Point p) {
  for (int t : incident) {
    const auto& tri = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    std::array<Point, 6> nodes;
    for (int k = 0; k < 3; ++k) nodes[k] = tri[k] == v ? p : pos[tri[k]];
    if (!(0.5 * cross(nodes[1] - nodes[0], nodes[2] - nodes[0]) > 0.0)) return false;
    if (!mesh.is_curved(t)) continue;
    for (int k = 0; k < 3; ++k) {
      const auto& c = mesh.curved_node(te[k]);
      nodes[3 + k] = c ? *c : midpoint(nodes[k], nodes[(k + 1) % 3]);
    }
    const ElementMap map(nodes, true);
    static const RefPoint probes[] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}, {1.0 / 3, 1.0 / 3}};
    for (const auto& q : probes)
      if (!(map.eval(q).det > 0.0)) return false;
  }
  return true;
}

}  // namespace

Mesh laplacian_smooth(const Mesh& mesh, int iters) {
  if (iters <= 0) return mesh;
  const int nv = mesh.num_vertices();
  std::vector<std::vector<int>> nbrs(nv), incident(nv);
  for (const auto& e : mesh.edges()) {
    nbrs[e.v[0]].push_back(e.v[1]);
    nbrs[e.v[1]].push_back(e.v[0]);
  }
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int v : mesh.triangle(t)) incident[v].push_back(t);

  std::vector<Point> pos = mesh.vertices();
  for (int it = 0; it < iters; ++it) {
    for (int v = 0; v < nv; ++v) {
      if (mesh.is_boundary_vertex(v) || nbrs[v].empty()) continue;
      Point mean{};
      for (int w : nbrs[v]) mean = mean + pos[w];
      mean = (1.0 / nbrs[v].size()) * mean;
      if (valid_after_move(mesh, pos, incident[v], v, mean)) pos[v] = mean;
    }
  }
  return Mesh(std::move(pos), mesh.triangles(), mesh.curved_nodes(), mesh.tags(), mesh.boundary_radius());
}

}  // namespace bingham
