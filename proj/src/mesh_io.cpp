#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bingham/mesh.hpp"

namespace bingham {

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << std::setprecision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& p : mesh.vertices()) os << p.x << ' ' << p.y << '\n';
  os << "triangles " << mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  const int nc = mesh.num_curved_edges();
  if (nc > 0) {
    os << "curved " << nc << '\n';
    for (int e = 0; e < mesh.num_edges(); ++e) {
      const auto& c = mesh.curved_node(e);
      if (c) os << mesh.edge(e).v[0] << ' ' << mesh.edge(e).v[1] << ' ' << c->x << ' ' << c->y << '\n';
    }
  }
  os.flags(old_flags);
  os.precision(old_prec);
}

namespace {

int read_header(std::istream& is, const std::string& expected) {
  std::string word;
  int n = -1;
  if (!(is >> word >> n) || word != expected || n < 0)
    throw InvalidArgument("read_mesh: expected '" + expected + " N'");
  return n;
}

}  // namespace

Mesh read_mesh(std::istream& is) {
  const int nv = read_header(is, "vertices");
  std::vector<Point> verts(nv);
  for (auto& p : verts)
    if (!(is >> p.x >> p.y)) throw InvalidArgument("read_mesh: truncated vertex list");
  const int nt = read_header(is, "triangles");
  std::vector<Triangle> tris(nt);
  for (auto& t : tris)
    if (!(is >> t[0] >> t[1] >> t[2])) throw InvalidArgument("read_mesh: truncated triangle list");

  CurvedNodes curved;
  std::optional<double> radius;
  std::string word;
  if (is >> word) {
    int nc = -1;
    if (word != "curved" || !(is >> nc) || nc < 0) throw InvalidArgument("read_mesh: expected 'curved K'");
    for (int i = 0; i < nc; ++i) {
      int a = 0, b = 0;
      Point p;
      if (!(is >> a >> b >> p.x >> p.y)) throw InvalidArgument("read_mesh: truncated curved list");
      curved[{std::min(a, b), std::max(a, b)}] = p;
      // Curved boundaries are circles about the origin.
      radius = std::max(radius.value_or(0.0), norm(p));
    }
  }
  return Mesh(std::move(verts), std::move(tris), curved, {}, radius);
}

}  // namespace bingham
