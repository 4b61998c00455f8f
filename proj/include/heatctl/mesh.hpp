#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heatctl {

using Index = std::size_t;

struct Point {
  double x;
  double y;
};

enum class BoundaryTag : std::uint8_t { Gamma1, Gamma2 };

/// Sides of the unit square.
enum class Side : std::uint8_t { Bottom, Right, Top, Left };

std::string_view to_string(Side side);
std::optional<Side> parse_side(std::string_view name);

struct BoundaryEdge {
  std::array<Index, 2> vertices;
  Side side;
  BoundaryTag tag;
};

/// Conforming triangulation of the unit square with tagged boundary edges.
///
/// Triangles are stored counterclockwise. Boundary edges are stored side by
/// side (bottom, right, top, left), each side ordered by increasing
/// coordinate. A constructed mesh is immutable.
class Mesh {
 public:
  Mesh(Index subdivisions, std::vector<Point> vertices,
       std::vector<std::array<Index, 3>> triangles,
       std::vector<BoundaryEdge> boundary_edges);

  Index subdivisions() const noexcept { return subdivisions_; }
  Index num_vertices() const noexcept { return vertices_.size(); }
  Index num_triangles() const noexcept { return triangles_.size(); }

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::span<const std::array<Index, 3>> triangles() const noexcept { return triangles_; }
  std::span<const BoundaryEdge> boundary_edges() const noexcept { return boundary_edges_; }

  const Point& vertex(Index i) const { return vertices_.at(i); }
  std::array<Point, 3> triangle_points(Index t) const;

  double signed_area(Index t) const;
  double edge_length(const BoundaryEdge& edge) const;
  double tagged_length(BoundaryTag tag) const;

  /// Sorted, unique endpoints of all edges carrying `tag`.
  std::vector<Index> tagged_vertices(BoundaryTag tag) const;

  /// Sides whose edges carry Gamma1.
  std::vector<Side> gamma1_sides() const;

 private:
  Index subdivisions_;
  std::vector<Point> vertices_;
  std::vector<std::array<Index, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
};

/// Uniform (n+1)x(n+1) grid, every cell split along its bottom-left to
/// top-right diagonal. Gamma1 is the left side.
Mesh build_unit_square_mesh(Index n);

/// Retags every boundary edge: Gamma1 on the listed sides, Gamma2 elsewhere.
/// Throws MeasureZeroViolation when either portion would be empty.
Mesh classify_boundary(const Mesh& mesh, std::span<const Side> gamma1_sides);

}  // namespace heatctl
