#include "heatctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxBacktracks = 80;

bool has_g(ControlBlocks b) { return b != ControlBlocks::BoundaryOnly; }
bool has_q(ControlBlocks b) { return b != ControlBlocks::DistributedOnly; }

double reference_step(const Problem& problem) {
  return 1.0 / std::min(problem.M1(), problem.M2());
}

/// Descent direction: H-gradient for g, lumped-metric gradient for q.
ControlPair direction(const Problem& problem, const ControlPair& grad, ControlBlocks blocks) {
  ControlPair d{Vector(grad.g.size(), 0.0), Vector(grad.q.size(), 0.0)};
  if (has_g(blocks)) d.g = grad.g;
  if (has_q(blocks)) {
    const TraceSpace& trace = problem.operators().trace;
    d.q = trace.mass() * grad.q;
    const auto lumped = trace.lumped_mass();
    for (Index i = 0; i < d.q.size(); ++i) d.q[i] /= lumped[i];
  }
  return d;
}

ControlPair trial_point(const ControlPair& x, const ControlPair& dir, double step,
                        ControlBlocks blocks, bool constrained) {
  ControlPair y = x;
  if (has_g(blocks)) axpy(-step, dir.g, y.g);
  if (has_q(blocks)) {
    axpy(-step, dir.q, y.q);
    if (constrained) y.q = project_admissible(y.q);
  }
  return y;
}

void check_sizes(const Problem& problem, const ControlPair& c) {
  if (c.g.size() != problem.num_vertices() || c.q.size() != problem.trace_size()) {
    throw ValidationError("control pair does not match the problem's spaces");
  }
}

OcpSolution projected_gradient(const Problem& problem, ControlPair x, ControlBlocks blocks,
                               const OcpOptions& options) {
  check_sizes(problem, x);
  const double tol = options.tol.value_or(problem.ocp_tol());
  if (!(tol > 0.0)) throw ValidationError("ocp tolerance must be positive");
  if (options.constrained && has_q(blocks)) x.q = project_admissible(x.q);

  const double s_ref = reference_step(problem);
  const double M1 = problem.M1(), M2 = problem.M2();

  StateSolution state = problem.solve_state(x);
  AdjointSolution adjoint = problem.solve_adjoint(state);
  ControlPair grad = gradient(problem, x, adjoint);

  Index it = 0;
  double residual = stationarity_residual(problem, x, grad, blocks, options.constrained);
  while (residual > tol) {
    if (it >= options.max_iterations) {
      throw OcpFailure("projected gradient: iteration cap reached, stationarity residual " +
                           std::to_string(residual),
                       residual, it);
    }
    ++it;

    const ControlPair dir = direction(problem, grad, blocks);
    const Vector misfit = subtract(state.u, problem.z_d());
    double step = s_ref;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, step *= kShrink) {
      ControlPair trial = trial_point(x, dir, step, blocks, options.constrained);
      const ControlPair delta = combine(1.0, trial, -1.0, x);
      const Vector du = problem.state_increment(delta);

      // J is quadratic: evaluate J(x + delta) - J(x) exactly instead of
      // differencing two nearly equal costs.
      const double linear = problem.inner_H(misfit, du) + M1 * problem.inner_H(x.g, delta.g) +
                            M2 * problem.inner_Q(x.q, delta.q);
      const double quadratic = 0.5 * (problem.inner_H(du, du) +
                                      M1 * problem.inner_H(delta.g, delta.g) +
                                      M2 * problem.inner_Q(delta.q, delta.q));
      const double slope = problem.inner_H(grad.g, delta.g) + problem.inner_Q(grad.q, delta.q);
      if (linear + quadratic <= kArmijo * slope) {
        x = std::move(trial);
        axpy(1.0, du, state.u);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw OcpFailure("projected gradient: line search failed, stationarity residual " +
                           std::to_string(residual),
                       residual, it);
    }
    adjoint = problem.solve_adjoint(state);
    grad = gradient(problem, x, adjoint);
    residual = stationarity_residual(problem, x, grad, blocks, options.constrained);
  }

  OcpSolution out;
  out.state = problem.solve_state(x);
  out.adjoint = problem.solve_adjoint(out.state);
  out.cost = cost(problem, x, out.state);
  out.control = std::move(x);
  out.iterations = it;
  out.residual = residual;
  return out;
}

}  // namespace

double cost(const Problem& problem, const ControlPair& control, const StateSolution& state) {
  const Vector misfit = subtract(state.u, problem.z_d());
  return 0.5 * problem.inner_H(misfit, misfit) +
         0.5 * problem.M1() * problem.inner_H(control.g, control.g) +
         0.5 * problem.M2() * problem.inner_Q(control.q, control.q);
}

ControlPair gradient(const Problem& problem, const ControlPair& control,
                     const AdjointSolution& adjoint) {
  check_sizes(problem, control);
  ControlPair grad{scaled(problem.M1(), control.g), scaled(problem.M2(), control.q)};
  axpy(1.0, adjoint.p, grad.g);
  axpy(-1.0, problem.operators().trace.trace(adjoint.p), grad.q);
  return grad;
}

Vector project_admissible(std::span<const double> q) {
  Vector out(q.begin(), q.end());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

double stationarity_residual(const Problem& problem, const ControlPair& control,
                             const ControlPair& grad, ControlBlocks blocks, bool constrained) {
  const double s = reference_step(problem);
  const ControlPair dir = direction(problem, grad, blocks);
  const ControlPair moved = trial_point(control, dir, s, blocks, constrained);
  return problem.norm_HQ(combine(1.0, control, -1.0, moved)) / s;
}

OcpSolution solve_ocp(const Problem& problem, const OcpOptions& options) {
  return projected_gradient(problem, options.initial.value_or(problem.zero_control()),
                            ControlBlocks::Both, options);
}

OcpSolution solve_scalar_g(const Problem& problem, std::span<const double> q_fixed,
                           const OcpOptions& options) {
  ControlPair x = options.initial.value_or(problem.zero_control());
  x.q.assign(q_fixed.begin(), q_fixed.end());
  return projected_gradient(problem, std::move(x), ControlBlocks::DistributedOnly, options);
}

OcpSolution solve_scalar_q(const Problem& problem, std::span<const double> g_fixed,
                           const OcpOptions& options) {
  ControlPair x = options.initial.value_or(problem.zero_control());
  x.g.assign(g_fixed.begin(), g_fixed.end());
  return projected_gradient(problem, std::move(x), ControlBlocks::BoundaryOnly, options);
}

ControlPair fixed_point_map(const Problem& problem, const ControlPair& control) {
  const AdjointSolution adjoint = problem.solve_adjoint(problem.solve_state(control));
  return {scaled(-1.0 / problem.M1(), adjoint.p),
          scaled(1.0 / problem.M2(), problem.operators().trace.trace(adjoint.p))};
}

FixedPointResult fixed_point_solve(const Problem& problem, const ControlPair& initial, double tol,
                                   Index max_iterations) {
  check_sizes(problem, initial);
  if (!(tol > 0.0)) throw ValidationError("fixed-point tolerance must be positive");

  FixedPointResult result;
  ControlPair x = initial;
  int growth = 0;
  for (Index it = 1; it <= max_iterations; ++it) {
    ControlPair next = fixed_point_map(problem, x);
    const double step = problem.norm_HQ(combine(1.0, next, -1.0, x));
    if (!result.step_norms.empty()) {
      const double prev = result.step_norms.back();
      result.ratios.push_back(prev > 0.0 ? step / prev : 0.0);
      growth = step > prev ? growth + 1 : 0;
    }
    result.step_norms.push_back(step);
    x = std::move(next);
    result.iterations = it;
    if (step <= tol) {
      result.control = std::move(x);
      return result;
    }
    if (growth >= 10 || !std::isfinite(step)) {
      throw NoContraction("fixed point: steps grew for 10 consecutive iterations", step, it);
    }
  }
  throw NoContraction("fixed point: iteration cap reached", result.step_norms.back(),
                      max_iterations);
}

}  // namespace heatctl
