// Helpers shared by the unit tests: dense Eigen copies of sparse matrices
// and small problem builders.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "heatctl/control.hpp"
#include "heatctl/linalg.hpp"
#include "heatctl/pde.hpp"
#include "heatctl/sparse.hpp"

namespace heatctl::test {

inline Eigen::MatrixXd dense(const SymmetricSparseMatrix& A) {
  const Index n = A.dimension();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index k = A.row_offsets()[i]; k < A.row_offsets()[i + 1]; ++k) {
      D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(A.columns()[k])) = A.values()[k];
    }
  }
  return D;
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

/// L2 distance between a P1 nodal field and a smooth function, using the
/// 7-point degree-5 rule on every triangle.
inline double l2_error(const Mesh& mesh, std::span<const double> nodal,
                       const std::function<double(Point)>& exact) {
  struct Node { double w, l0, l1, l2; };
  constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115;
  constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456;
  constexpr double w1 = 0.132394152788506, w2 = 0.125939180544827;
  constexpr Node rule[7] = {{0.225, 1.0 / 3, 1.0 / 3, 1.0 / 3}, {w1, a1, b1, b1}, {w1, b1, a1, b1},
                            {w1, b1, b1, a1},                   {w2, a2, b2, b2}, {w2, b2, a2, b2},
                            {w2, b2, b2, a2}};
  double total = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto pts = mesh.triangle_points(t);
    const double area = mesh.signed_area(t);
    for (const Node& q : rule) {
      const Point x{q.l0 * pts[0].x + q.l1 * pts[1].x + q.l2 * pts[2].x,
                    q.l0 * pts[0].y + q.l1 * pts[1].y + q.l2 * pts[2].y};
      const double uh = q.l0 * nodal[tri[0]] + q.l1 * nodal[tri[1]] + q.l2 * nodal[tri[2]];
      const double e = uh - exact(x);
      total += area * q.w * e * e;
    }
  }
  return std::sqrt(total);
}

inline ControlPair random_control(const Problem& problem, UniformStream& s, double lo = -1.0,
                                  double hi = 1.0) {
  return {s.vector(problem.num_vertices(), lo, hi), s.vector(problem.trace_size(), lo, hi)};
}

/// Dirichlet on the left side, z_d replaced by the uncontrolled state.
inline ProblemSpec trivial_spec(Index n, BcKind bc = BcKind::Dirichlet) {
  ProblemSpec spec;
  spec.n = n;
  spec.bc = bc;
  spec.alpha = 3.0;
  spec.b = [](Point p) { return 1.0 + 0.5 * p.y; };
  spec.target_is_uncontrolled_state = true;
  return spec;
}

/// A generic data set with both constraint regimes present.
inline ProblemSpec generic_spec(Index n, BcKind bc = BcKind::Dirichlet) {
  ProblemSpec spec;
  spec.n = n;
  spec.bc = bc;
  spec.alpha = 5.0;
  spec.M1 = 0.5;
  spec.M2 = 0.3;
  spec.b = [](Point p) { return 0.5 + 0.25 * p.y; };
  spec.z_d = [](Point p) { return std::sin(3.0 * p.x) * std::cos(2.0 * p.y) - 0.3; };
  return spec;
}

}  // namespace heatctl::test
