#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "heatctl/mesh.hpp"
#include "heatctl/sparse.hpp"

namespace heatctl {

using ElementMatrix3 = std::array<std::array<double, 3>, 3>;

/// Exact P1 element matrix of the Dirichlet form over one triangle.
ElementMatrix3 p1_stiffness_element(const std::array<Point, 3>& tri);
/// Exact consistent P1 mass over one triangle: (area/12)[[2,1,1],[1,2,1],[1,1,2]].
ElementMatrix3 p1_mass_element(const std::array<Point, 3>& tri);
/// Exact consistent 1D P1 mass over an edge of length h.
std::array<std::array<double, 2>, 2> p1_edge_mass_element(double h);

SymmetricSparseMatrix assemble_stiffness(const Mesh& mesh);
SymmetricSparseMatrix assemble_domain_mass(const Mesh& mesh);
/// Vertex-indexed 1D mass over the edges carrying `tag`; other rows are zero.
SymmetricSparseMatrix assemble_boundary_mass(const Mesh& mesh, BoundaryTag tag);

/// Nodal interpolant of `f` on all vertices.
Vector interpolate(const Mesh& mesh, const std::function<double(Point)>& f);

/// Discrete L2 space on a tagged boundary portion: continuous P1 along each
/// side of the square, broken at the square's corners.
///
/// A degree of freedom is a (side, vertex) pair, so a corner vertex shared by
/// two tagged sides carries one value per side. This lets piecewise data
/// such as a flux that jumps at a corner be represented exactly.
class TraceSpace {
 public:
  TraceSpace(const Mesh& mesh, BoundaryTag tag);

  Index size() const noexcept { return vertex_of_.size(); }
  std::span<const Index> vertices() const noexcept { return vertex_of_; }
  std::span<const Side> sides() const noexcept { return side_of_; }

  const SymmetricSparseMatrix& mass() const noexcept { return mass_; }
  std::span<const double> lumped_mass() const noexcept { return lumped_; }

  /// Restriction of a vertex field to the trace degrees of freedom.
  Vector trace(std::span<const double> nodal) const;
  /// Transpose of `trace`: accumulates trace values onto their vertices.
  Vector spread(std::span<const double> values, Index num_vertices) const;

  Vector interpolate(const Mesh& mesh, const std::function<double(Point, Side)>& f) const;

 private:
  std::vector<Index> vertex_of_;
  std::vector<Side> side_of_;
  SymmetricSparseMatrix mass_;
  Vector lumped_;
};

struct RobinData {
  double alpha;
  std::span<const double> b;  ///< vertex-indexed; only Gamma1 entries matter
};

/// Every operator needed by the state and adjoint problems on one mesh.
struct FemOperators {
  explicit FemOperators(Mesh mesh);

  Mesh mesh;
  SymmetricSparseMatrix stiffness;
  SymmetricSparseMatrix domain_mass;
  SymmetricSparseMatrix gamma1_mass;
  SymmetricSparseMatrix gamma2_mass;  ///< vertex-indexed, equals T^T M_Q T
  SymmetricSparseMatrix v_gram;       ///< stiffness + domain_mass
  TraceSpace trace;                   ///< control space on Gamma2
  std::vector<Index> gamma1_vertices;

  /// M_H g - T^T M_Q q (+ alpha M_R b).
  Vector load(std::span<const double> g, std::span<const double> q,
              std::optional<RobinData> robin = std::nullopt) const;
};

/// Load vector of the state problem; q lives on the Gamma2 trace space.
Vector assemble_load(const Mesh& mesh, std::span<const double> g, std::span<const double> q,
                     std::optional<RobinData> robin = std::nullopt);

/// Elimination of prescribed vertex values from a symmetric system.
class DirichletReduction {
 public:
  DirichletReduction(const SymmetricSparseMatrix& full, std::vector<Index> fixed);

  const SymmetricSparseMatrix& reduced_matrix() const noexcept { return reduced_; }
  std::span<const Index> free_vertices() const noexcept { return free_; }
  std::span<const Index> fixed_vertices() const noexcept { return fixed_; }
  Index full_dimension() const noexcept { return full_.dimension(); }

  /// Free rows of load - A*lifting.
  Vector reduce_rhs(std::span<const double> load, std::span<const double> lifting) const;
  Vector restrict(std::span<const double> full) const;
  /// Free values from `reduced`, fixed values from `lifting`.
  Vector expand(std::span<const double> reduced, std::span<const double> lifting) const;

 private:
  SymmetricSparseMatrix full_;
  std::vector<Index> fixed_;
  std::vector<Index> free_;
  SymmetricSparseMatrix reduced_;
};

struct ReducedSystem {
  SymmetricSparseMatrix matrix;
  Vector rhs;
  Vector lifting;  ///< b on Gamma1 vertices, zero elsewhere
  std::vector<Index> free_vertices;

  Vector expand(std::span<const double> reduced_solution) const;
};

/// Eliminates the Gamma1 vertices with the lifting of `b` (vertex-indexed).
ReducedSystem apply_dirichlet(const SymmetricSparseMatrix& stiffness, std::span<const double> load,
                              const Mesh& mesh, std::span<const double> b);

}  // namespace heatctl
