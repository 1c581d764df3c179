#include "bingham/basis.hpp"

#include "bingham/common.hpp"

namespace bingham {

namespace {

// Each basis function is c * prod_k (a_k * lambda_{i_k} + b_k).
struct Factor {
  int lam;
  double a;
  double b;
};

struct ProductPoly {
  double c;
  std::vector<Factor> factors;
};

constexpr std::array<std::array<double, 2>, 3> kLambdaGrad{{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};

const std::vector<ProductPoly>& polys(BasisKind kind) {
  static const std::vector<ProductPoly> p0{{1.0, {}}};
  static const std::vector<ProductPoly> p1{
      {1.0, {{0, 1, 0}}}, {1.0, {{1, 1, 0}}}, {1.0, {{2, 1, 0}}}};
  static const std::vector<ProductPoly> p2 = [] {
    std::vector<ProductPoly> v;
    for (int i = 0; i < 3; ++i) v.push_back({1.0, {{i, 1, 0}, {i, 2, -1}}});
    for (int k = 0; k < 3; ++k) v.push_back({4.0, {{k, 1, 0}, {(k + 1) % 3, 1, 0}}});
    return v;
  }();
  static const std::vector<ProductPoly> p3 = [] {
    std::vector<ProductPoly> v;
    for (int i = 0; i < 3; ++i) v.push_back({0.5, {{i, 1, 0}, {i, 3, -1}, {i, 3, -2}}});
    for (int k = 0; k < 3; ++k) {
      const int j = (k + 1) % 3;
      v.push_back({4.5, {{k, 1, 0}, {j, 1, 0}, {k, 3, -1}}});
      v.push_back({4.5, {{k, 1, 0}, {j, 1, 0}, {j, 3, -1}}});
    }
    v.push_back({27.0, {{0, 1, 0}, {1, 1, 0}, {2, 1, 0}}});
    return v;
  }();
  static const std::vector<ProductPoly> mini{
      {1.0, {{0, 1, 0}}}, {1.0, {{1, 1, 0}}}, {1.0, {{2, 1, 0}}},
      {27.0, {{0, 1, 0}, {1, 1, 0}, {2, 1, 0}}}};
  switch (kind) {
    case BasisKind::P0: return p0;
    case BasisKind::P1: return p1;
    case BasisKind::P2: return p2;
    case BasisKind::P3: return p3;
    case BasisKind::P1Bubble: return mini;
  }
  throw InvalidArgument("unknown basis kind");
}

}  // namespace

int basis_size(BasisKind kind) { return static_cast<int>(polys(kind).size()); }

int basis_degree(BasisKind kind) {
  switch (kind) {
    case BasisKind::P0: return 0;
    case BasisKind::P1: return 1;
    case BasisKind::P2: return 2;
    case BasisKind::P3: return 3;
    case BasisKind::P1Bubble: return 3;
  }
  throw InvalidArgument("unknown basis kind");
}

std::vector<std::array<double, 3>> reference_nodes(BasisKind kind) {
  const double third = 1.0 / 3.0;
  std::vector<std::array<double, 3>> nodes;
  auto vertex = [](int i) {
    std::array<double, 3> b{0, 0, 0};
    b[i] = 1.0;
    return b;
  };
  switch (kind) {
    case BasisKind::P0:
      nodes.push_back({third, third, third});
      break;
    case BasisKind::P1:
      for (int i = 0; i < 3; ++i) nodes.push_back(vertex(i));
      break;
    case BasisKind::P2:
      for (int i = 0; i < 3; ++i) nodes.push_back(vertex(i));
      for (int k = 0; k < 3; ++k) {
        std::array<double, 3> b{0, 0, 0};
        b[k] = b[(k + 1) % 3] = 0.5;
        nodes.push_back(b);
      }
      break;
    case BasisKind::P3:
      for (int i = 0; i < 3; ++i) nodes.push_back(vertex(i));
      for (int k = 0; k < 3; ++k) {
        std::array<double, 3> near_k{0, 0, 0}, near_j{0, 0, 0};
        near_k[k] = 2 * third;
        near_k[(k + 1) % 3] = third;
        near_j[k] = third;
        near_j[(k + 1) % 3] = 2 * third;
        nodes.push_back(near_k);
        nodes.push_back(near_j);
      }
      nodes.push_back({third, third, third});
      break;
    case BasisKind::P1Bubble:
      for (int i = 0; i < 3; ++i) nodes.push_back(vertex(i));
      nodes.push_back({third, third, third});
      break;
  }
  return nodes;
}

void eval_reference_basis(BasisKind kind, RefPoint p, std::span<double> values,
                          std::span<std::array<double, 2>> grads,
                          std::span<std::array<double, 3>> hess) {
  const std::array<double, 3> lam{1.0 - p.xi - p.eta, p.xi, p.eta};
  const auto& ps = polys(kind);
  for (std::size_t f = 0; f < ps.size(); ++f) {
    const auto& poly = ps[f];
    const std::size_t m = poly.factors.size();
    std::array<double, 3> val{};
    std::array<std::array<double, 2>, 3> g{};
    for (std::size_t k = 0; k < m; ++k) {
      const Factor& fk = poly.factors[k];
      val[k] = fk.a * lam[fk.lam] + fk.b;
      g[k] = {fk.a * kLambdaGrad[fk.lam][0], fk.a * kLambdaGrad[fk.lam][1]};
    }
    auto prod_except = [&](std::size_t i, std::size_t j) {
      double r = poly.c;
      for (std::size_t k = 0; k < m; ++k)
        if (k != i && k != j) r *= val[k];
      return r;
    };
    values[f] = prod_except(m, m);
    if (!grads.empty()) {
      std::array<double, 2> gr{0.0, 0.0};
      for (std::size_t k = 0; k < m; ++k) {
        const double r = prod_except(k, m);
        gr[0] += g[k][0] * r;
        gr[1] += g[k][1] * r;
      }
      grads[f] = gr;
    }
    if (!hess.empty()) {
      std::array<double, 3> h{0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (k == l) continue;
          const double r = prod_except(k, l);
          h[0] += g[k][0] * g[l][0] * r;
          h[1] += g[k][0] * g[l][1] * r;
          h[2] += g[k][1] * g[l][1] * r;
        }
      hess[f] = h;
    }
  }
}

BasisTable tabulate(BasisKind kind, std::span<const RefPoint> points) {
  BasisTable t;
  t.num_points = static_cast<int>(points.size());
  t.num_basis = basis_size(kind);
  const std::size_t n = static_cast<std::size_t>(t.num_points) * t.num_basis;
  t.values.resize(n);
  t.grads.resize(n);
  t.hess.resize(n);
  for (int q = 0; q < t.num_points; ++q) {
    const std::size_t off = static_cast<std::size_t>(q) * t.num_basis;
    eval_reference_basis(kind, points[q], std::span(t.values).subspan(off, t.num_basis),
                         std::span(t.grads).subspan(off, t.num_basis),
                         std::span(t.hess).subspan(off, t.num_basis));
  }
  return t;
}

}  // namespace bingham
