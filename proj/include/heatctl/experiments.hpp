#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "heatctl/catalog.hpp"
#include "heatctl/config.hpp"
#include "heatctl/estimates.hpp"
#include "heatctl/pde.hpp"

namespace heatctl {

struct SweepConfig {
  ProblemSpec spec;  ///< template; bc and alpha are overridden per row
  std::vector<double> alphas = default_alpha_schedule();
  SweepMode mode = SweepMode::OptimalControl;
  ScalarField g = [](Point) { return 1.0; };          ///< fixed-control mode
  BoundaryField q = [](Point, Side) { return 0.5; };  ///< fixed-control mode

  void validate() const;
};

struct SweepRow {
  double alpha = 0.0;
  double u_gap_V = 0.0;
  double p_gap_V = 0.0;
  double ctrl_gap_HQ = 0.0;
  double g_gap_H = 0.0;
  double q_gap_Q = 0.0;
  double cost_alpha = 0.0;
  double cost_gap = 0.0;
  double bound_q_rhs = 0.0;     ///< (||gamma0|| / M2) ||p_alpha - p||_V
  double bound_g_rhs_M1 = 0.0;  ///< (1 / M1) ||p_alpha - p||_V
  double bound_g_rhs_M2 = 0.0;  ///< (1 / M2) ||p_alpha - p||_V
  double g_norm_H = 0.0;
  double q_norm_Q = 0.0;
  Index ocp_iterations = 0;
  double seconds = 0.0;

  bool bound_q_holds() const { return q_gap_Q <= bound_q_rhs; }
  bool bound_g_M1_holds() const { return g_gap_H <= bound_g_rhs_M1; }
  bool bound_g_M2_holds() const { return g_gap_H <= bound_g_rhs_M2; }
};

/// Robin-to-Dirichlet gaps per alpha against one Dirichlet reference.
struct ConvergenceReport {
  SweepMode mode = SweepMode::OptimalControl;
  double trace_norm = 0.0;
  double ref_u_norm_V = 0.0;
  double ref_p_norm_V = 0.0;
  double ref_ctrl_norm_HQ = 0.0;
  double ref_cost = 0.0;
  std::vector<SweepRow> rows;

  /// gap / reference, or the gap itself when the reference vanishes.
  static double relative(double gap, double reference);

  /// Per-alpha wall time is included only when `timings` is set, so that
  /// default output is byte-reproducible.
  void write_csv(std::ostream& out, bool timings = false) const;
};

/// Fixed-control mode compares u, p and J at the configured (g, q);
/// optimal-control mode compares optimal controls, states, adjoints and
/// costs, and evaluates the control-gap bounds on every row.
ConvergenceReport run_alpha_sweep(const SweepConfig& config);

/// Random data (weights, alpha, b, z_d) on the template's mesh.
ProblemSpec random_spec(const ProblemSpec& base, std::uint64_t seed);

/// Estimate rows for the template spec (case 0) and for `seed_count` random
/// specs (cases 1..seed_count, each in both Dirichlet and Robin form), plus
/// informational bounds on the optimal-control norms over `alphas`.
EstimateReport run_estimate_report(const ProblemSpec& spec, Index seed_count, std::uint64_t seed,
                                   const std::vector<double>& alphas = default_alpha_schedule());

}  // namespace heatctl
