#include "heatctl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "heatctl/errors.hpp"

namespace heatctl {

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Bottom:
      return "bottom";
    case Side::Right:
      return "right";
    case Side::Top:
      return "top";
    case Side::Left:
      return "left";
  }
  return "?";
}

std::optional<Side> parse_side(std::string_view name) {
  for (Side s : {Side::Bottom, Side::Right, Side::Top, Side::Left}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

Mesh::Mesh(Index subdivisions, std::vector<Point> vertices,
           std::vector<std::array<Index, 3>> triangles,
           std::vector<BoundaryEdge> boundary_edges)
    : subdivisions_(subdivisions),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary_edges)) {}

std::array<Point, 3> Mesh::triangle_points(Index t) const {
  const auto& tri = triangles_.at(t);
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::signed_area(Index t) const {
  const auto [a, b, c] = triangle_points(t);
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double Mesh::edge_length(const BoundaryEdge& edge) const {
  const Point& a = vertices_.at(edge.vertices[0]);
  const Point& b = vertices_.at(edge.vertices[1]);
  return std::hypot(b.x - a.x, b.y - a.y);
}

double Mesh::tagged_length(BoundaryTag tag) const {
  double length = 0.0;
  for (const auto& e : boundary_edges_) {
    if (e.tag == tag) length += edge_length(e);
  }
  return length;
}

std::vector<Index> Mesh::tagged_vertices(BoundaryTag tag) const {
  std::vector<Index> out;
  for (const auto& e : boundary_edges_) {
    if (e.tag != tag) continue;
    out.push_back(e.vertices[0]);
    out.push_back(e.vertices[1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Side> Mesh::gamma1_sides() const {
  std::vector<Side> sides;
  for (const auto& e : boundary_edges_) {
    if (e.tag == BoundaryTag::Gamma1 &&
        std::find(sides.begin(), sides.end(), e.side) == sides.end()) {
      sides.push_back(e.side);
    }
  }
  return sides;
}

Mesh build_unit_square_mesh(Index n) {
  if (n == 0) throw ValidationError("mesh subdivisions must be at least 1");

  const Index stride = n + 1;
  auto id = [stride](Index i, Index j) { return i + j * stride; };
  const double h = 1.0 / static_cast<double>(n);

  std::vector<Point> vertices;
  vertices.reserve(stride * stride);
  for (Index j = 0; j <= n; ++j) {
    for (Index i = 0; i <= n; ++i) {
      // Exact endpoints so side membership tests stay exact.
      const double x = (i == n) ? 1.0 : static_cast<double>(i) * h;
      const double y = (j == n) ? 1.0 : static_cast<double>(j) * h;
      vertices.push_back({x, y});
    }
  }

  std::vector<std::array<Index, 3>> triangles;
  triangles.reserve(2 * n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Index v00 = id(i, j), v10 = id(i + 1, j);
      const Index v11 = id(i + 1, j + 1), v01 = id(i, j + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }

  auto tag_for = [](Side s) {
    return s == Side::Left ? BoundaryTag::Gamma1 : BoundaryTag::Gamma2;
  };
  std::vector<BoundaryEdge> edges;
  edges.reserve(4 * n);
  for (Index i = 0; i < n; ++i) edges.push_back({{id(i, 0), id(i + 1, 0)}, Side::Bottom, tag_for(Side::Bottom)});
  for (Index j = 0; j < n; ++j) edges.push_back({{id(n, j), id(n, j + 1)}, Side::Right, tag_for(Side::Right)});
  for (Index i = 0; i < n; ++i) edges.push_back({{id(i, n), id(i + 1, n)}, Side::Top, tag_for(Side::Top)});
  for (Index j = 0; j < n; ++j) edges.push_back({{id(0, j), id(0, j + 1)}, Side::Left, tag_for(Side::Left)});

  return Mesh(n, std::move(vertices), std::move(triangles), std::move(edges));
}

Mesh classify_boundary(const Mesh& mesh, std::span<const Side> gamma1_sides) {
  auto listed = [&](Side s) {
    return std::find(gamma1_sides.begin(), gamma1_sides.end(), s) != gamma1_sides.end();
  };
  const bool all = listed(Side::Bottom) && listed(Side::Right) && listed(Side::Top) &&
                   listed(Side::Left);
  if (gamma1_sides.empty() || all) {
    throw MeasureZeroViolation(
        "gamma1_sides must name at least one and at most three sides: both boundary "
        "portions need positive length");
  }

  std::vector<BoundaryEdge> edges(mesh.boundary_edges().begin(), mesh.boundary_edges().end());
  for (auto& e : edges) e.tag = listed(e.side) ? BoundaryTag::Gamma1 : BoundaryTag::Gamma2;

  return Mesh(mesh.subdivisions(),
              std::vector<Point>(mesh.vertices().begin(), mesh.vertices().end()),
              std::vector<std::array<Index, 3>>(mesh.triangles().begin(), mesh.triangles().end()),
              std::move(edges));
}

}  // namespace heatctl
