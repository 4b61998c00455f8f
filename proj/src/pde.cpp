#include "heatctl/pde.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "heatctl/errors.hpp"

namespace heatctl {

void ProblemSpec::validate() const {
  if (n == 0) throw ValidationError("n must be at least 1");
  // The all-four-sides case is rejected by classify_boundary.
  if (gamma1_sides.empty()) {
    throw MeasureZeroViolation("gamma1_sides is empty: Gamma1 would have zero length");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
  if (!(M1 > 0.0) || !std::isfinite(M1)) throw ValidationError("M1 must be positive");
  if (!(M2 > 0.0) || !std::isfinite(M2)) throw ValidationError("M2 must be positive");
  if (!(pde_tol > 0.0)) throw ValidationError("pde_tol must be positive");
  if (!(ocp_tol > 0.0)) throw ValidationError("ocp_tol must be positive");
  if (!b) throw ValidationError("boundary datum b is not set");
  if (!z_d && !target_is_uncontrolled_state) throw ValidationError("target z_d is not set");
}

ControlPair combine(double a, const ControlPair& x, double b, const ControlPair& y) {
  ControlPair out{scaled(a, x.g), scaled(a, x.q)};
  axpy(b, y.g, out.g);
  axpy(b, y.q, out.q);
  return out;
}

std::shared_ptr<const FemOperators> build_operators(const ProblemSpec& spec) {
  spec.validate();
  return std::make_shared<const FemOperators>(
      classify_boundary(build_unit_square_mesh(spec.n), spec.gamma1_sides));
}

Problem::Problem(const ProblemSpec& spec) : Problem(build_operators(spec), spec) {}

Problem::Problem(std::shared_ptr<const FemOperators> operators, const ProblemSpec& spec)
    : spec_(spec), operators_(std::move(operators)) {
  spec_.validate();
  const FemOperators& ops = *operators_;
  b_ = interpolate(ops.mesh, spec_.b);

  if (spec_.bc == BcKind::Dirichlet) {
    state_operator_ = ops.stiffness;
    reduction_.emplace(ops.stiffness, ops.gamma1_vertices);
  } else {
    state_operator_ = SymmetricSparseMatrix::combine(1.0, ops.stiffness, spec_.alpha, ops.gamma1_mass);
  }

  if (spec_.target_is_uncontrolled_state) {
    z_d_ = solve_state(zero_control()).u;
  } else {
    z_d_ = interpolate(ops.mesh, spec_.z_d);
  }
}

Problem Problem::with_boundary_condition(BcKind bc, double alpha) const {
  ProblemSpec s = spec_;
  s.bc = bc;
  s.alpha = alpha;
  Problem out(operators_, s);
  if (!spec_.target_is_uncontrolled_state) out.z_d_ = z_d_;
  return out;
}

Problem Problem::with_target(std::span<const double> z_d) const {
  if (z_d.size() != num_vertices()) throw ValidationError("target has wrong size");
  Problem out = *this;
  out.z_d_.assign(z_d.begin(), z_d.end());
  out.spec_.target_is_uncontrolled_state = false;
  return out;
}

ControlPair Problem::zero_control() const {
  return {Vector(num_vertices(), 0.0), Vector(trace_size(), 0.0)};
}

Vector Problem::solve(const Vector& load, bool homogeneous, Index& iterations,
                      double& residual) const {
  if (reduction_) {
    Vector lifting(num_vertices(), 0.0);
    if (!homogeneous) {
      for (Index v : reduction_->fixed_vertices()) lifting[v] = b_[v];
    }
    const auto report =
        solve_spd(reduction_->reduced_matrix(), reduction_->reduce_rhs(load, lifting), spec_.pde_tol);
    iterations = report.iterations;
    residual = report.relative_residual;
    return reduction_->expand(report.solution, lifting);
  }
  auto report = solve_spd(state_operator_, load, spec_.pde_tol);
  iterations = report.iterations;
  residual = report.relative_residual;
  return std::move(report.solution);
}

StateSolution Problem::solve_state(const ControlPair& control) const {
  const FemOperators& ops = *operators_;
  const Vector load = spec_.bc == BcKind::Robin
                          ? ops.load(control.g, control.q, RobinData{spec_.alpha, b_})
                          : ops.load(control.g, control.q);
  StateSolution s;
  s.u = solve(load, false, s.iterations, s.residual);
  return s;
}

AdjointSolution Problem::solve_adjoint(const StateSolution& state) const {
  return solve_adjoint_for_misfit(subtract(state.u, z_d_));
}

AdjointSolution Problem::solve_adjoint_for_misfit(std::span<const double> misfit) const {
  if (misfit.size() != num_vertices()) throw ValidationError("misfit has wrong size");
  AdjointSolution a;
  a.p = solve(operators_->domain_mass * misfit, true, a.iterations, a.residual);
  return a;
}

Vector Problem::state_increment(const ControlPair& delta) const {
  Index iterations = 0;
  double residual = 0.0;
  return solve(operators_->load(delta.g, delta.q), true, iterations, residual);
}

double Problem::inner_H(std::span<const double> a, std::span<const double> b) const {
  return operators_->domain_mass.bilinear_form(a, b);
}

double Problem::inner_Q(std::span<const double> a, std::span<const double> b) const {
  return operators_->trace.mass().bilinear_form(a, b);
}

double Problem::norm_H(std::span<const double> a) const {
  return std::sqrt(std::max(0.0, inner_H(a, a)));
}

double Problem::norm_Q(std::span<const double> a) const {
  return std::sqrt(std::max(0.0, inner_Q(a, a)));
}

double Problem::norm_V(std::span<const double> a) const {
  return std::sqrt(std::max(0.0, operators_->v_gram.quadratic_form(a)));
}

double Problem::inner_HQ(const ControlPair& a, const ControlPair& b) const {
  return inner_H(a.g, b.g) + inner_Q(a.q, b.q);
}

double Problem::norm_HQ(const ControlPair& a) const {
  return std::sqrt(std::max(0.0, inner_HQ(a, a)));
}

}  // namespace heatctl
