#pragma once

#include <optional>
#include <span>
#include <vector>

#include "heatctl/pde.hpp"

namespace heatctl {

/// J(g,q) = 1/2 ||u - z_d||_H^2 + M1/2 ||g||_H^2 + M2/2 ||q||_Q^2, with u the
/// state of `control` (Dirichlet or Robin according to the problem).
double cost(const Problem& problem, const ControlPair& control, const StateSolution& state);

/// Riesz representative of J' in H x Q: (M1 g + p, M2 q - p|Gamma2).
ControlPair gradient(const Problem& problem, const ControlPair& control,
                     const AdjointSolution& adjoint);

/// Nodal clamp max(q, 0): the exact projection onto q >= 0 in the lumped
/// boundary metric.
Vector project_admissible(std::span<const double> q);

/// Which components of the control are optimized; the others stay frozen.
enum class ControlBlocks { Both, DistributedOnly, BoundaryOnly };

struct OcpOptions {
  std::optional<ControlPair> initial;
  /// false drops the sign constraint on q (U_ad = Q).
  bool constrained = true;
  std::optional<double> tol;  ///< defaults to the problem's ocp_tol
  Index max_iterations = 100000;
};

struct OcpSolution {
  ControlPair control;
  StateSolution state;
  AdjointSolution adjoint;
  double cost = 0.0;
  Index iterations = 0;
  double residual = 0.0;
};

/// Stationarity measure ||x - P(x - s G)||_{HxQ} / s with s = 1/min(M1, M2),
/// where G uses the lumped boundary metric for q and P clamps q when
/// `constrained`. Frozen blocks do not contribute.
double stationarity_residual(const Problem& problem, const ControlPair& control,
                             const ControlPair& grad, ControlBlocks blocks, bool constrained);

/// Projected gradient with Armijo backtracking on the vectorial problem.
OcpSolution solve_ocp(const Problem& problem, const OcpOptions& options = {});

/// Distributed control only, with q frozen at `q_fixed`.
OcpSolution solve_scalar_g(const Problem& problem, std::span<const double> q_fixed,
                           const OcpOptions& options = {});

/// Boundary control only (q >= 0), with g frozen at `g_fixed`.
OcpSolution solve_scalar_q(const Problem& problem, std::span<const double> g_fixed,
                           const OcpOptions& options = {});

/// W(g,q) = (-p/M1, p|Gamma2 / M2) with p the adjoint at (g,q).
ControlPair fixed_point_map(const Problem& problem, const ControlPair& control);

struct FixedPointResult {
  ControlPair control;
  Index iterations = 0;
  std::vector<double> step_norms;  ///< ||x_{k+1} - x_k||_{HxQ}
  std::vector<double> ratios;      ///< step_norms[k+1] / step_norms[k]
};

/// Iterates W until successive steps fall below `tol` in H x Q.
/// Throws NoContraction after 10 consecutive step increases or when the
/// iteration cap is reached.
FixedPointResult fixed_point_solve(const Problem& problem, const ControlPair& initial, double tol,
                                   Index max_iterations = 10000);

}  // namespace heatctl
