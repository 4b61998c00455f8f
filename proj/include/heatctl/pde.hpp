#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "heatctl/fem.hpp"
#include "heatctl/linalg.hpp"
#include "heatctl/mesh.hpp"
#include "heatctl/sparse.hpp"

namespace heatctl {

enum class BcKind { Dirichlet, Robin };

using ScalarField = std::function<double(Point)>;

/// Full description of one problem instance before discretization.
struct ProblemSpec {
  Index n = 32;
  std::vector<Side> gamma1_sides{Side::Left};
  BcKind bc = BcKind::Dirichlet;
  double alpha = 1.0;  ///< heat transfer coefficient; used by Robin problems
  ScalarField b = [](Point) { return 0.0; };
  ScalarField z_d = [](Point) { return 0.0; };
  /// Replace z_d by the uncontrolled state u_(0,0) of the same problem.
  bool target_is_uncontrolled_state = false;
  double M1 = 1.0;
  double M2 = 1.0;
  double pde_tol = kDefaultSolveTolerance;
  double ocp_tol = 1e-8;

  /// Throws ValidationError (or MeasureZeroViolation for the side list).
  void validate() const;
};

/// Control vector (g, q): g is vertex-indexed over the domain, q lives on the
/// Gamma2 trace space.
struct ControlPair {
  Vector g;
  Vector q;
};

/// a*x + b*y componentwise.
ControlPair combine(double a, const ControlPair& x, double b, const ControlPair& y);

struct StateSolution {
  Vector u;
  Index iterations = 0;
  double residual = 0.0;
};

struct AdjointSolution {
  Vector p;
  Index iterations = 0;
  double residual = 0.0;
};

/// A discretized problem: mesh operators plus boundary condition and data.
///
/// The Dirichlet kind eliminates Gamma1 with the lifting of b and solves on
/// the free vertices; the Robin kind solves with K + alpha*M_R on all
/// vertices. Copies share the mesh operators.
class Problem {
 public:
  explicit Problem(const ProblemSpec& spec);
  Problem(std::shared_ptr<const FemOperators> operators, const ProblemSpec& spec);

  Problem with_boundary_condition(BcKind bc, double alpha) const;
  Problem with_target(std::span<const double> z_d) const;

  const ProblemSpec& spec() const noexcept { return spec_; }
  const FemOperators& operators() const noexcept { return *operators_; }
  std::shared_ptr<const FemOperators> shared_operators() const noexcept { return operators_; }
  const Mesh& mesh() const noexcept { return operators_->mesh; }

  BcKind bc() const noexcept { return spec_.bc; }
  double alpha() const noexcept { return spec_.alpha; }
  double M1() const noexcept { return spec_.M1; }
  double M2() const noexcept { return spec_.M2; }
  double pde_tol() const noexcept { return spec_.pde_tol; }
  double ocp_tol() const noexcept { return spec_.ocp_tol; }

  std::span<const double> b() const noexcept { return b_; }
  std::span<const double> z_d() const noexcept { return z_d_; }

  Index num_vertices() const noexcept { return mesh().num_vertices(); }
  Index trace_size() const noexcept { return operators_->trace.size(); }
  ControlPair zero_control() const;

  StateSolution solve_state(const ControlPair& control) const;
  AdjointSolution solve_adjoint(const StateSolution& state) const;
  /// Adjoint driven by an explicit misfit field in place of u - z_d.
  AdjointSolution solve_adjoint_for_misfit(std::span<const double> misfit) const;

  /// C(h, eta) = u_(h,eta) - u_(0,0): the state with homogeneous b.
  Vector state_increment(const ControlPair& delta) const;

  /// K for the Dirichlet kind, K + alpha*M_R for the Robin kind.
  const SymmetricSparseMatrix& state_operator() const noexcept { return state_operator_; }

  double inner_H(std::span<const double> a, std::span<const double> b) const;
  double inner_Q(std::span<const double> a, std::span<const double> b) const;
  double norm_H(std::span<const double> a) const;
  double norm_Q(std::span<const double> a) const;
  /// Discrete H1 norm, sqrt(v^T (K + M_H) v).
  double norm_V(std::span<const double> a) const;
  double inner_HQ(const ControlPair& a, const ControlPair& b) const;
  double norm_HQ(const ControlPair& a) const;

 private:
  Vector solve(const Vector& load, bool homogeneous, Index& iterations, double& residual) const;

  ProblemSpec spec_;
  std::shared_ptr<const FemOperators> operators_;
  Vector b_;
  Vector z_d_;
  SymmetricSparseMatrix state_operator_;
  std::optional<DirichletReduction> reduction_;
};

/// Mesh operators for a spec (mesh size and Gamma1 sides only).
std::shared_ptr<const FemOperators> build_operators(const ProblemSpec& spec);

}  // namespace heatctl
