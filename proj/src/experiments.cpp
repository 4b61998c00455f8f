#include "heatctl/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

#include "heatctl/constants.hpp"
#include "heatctl/control.hpp"
#include "heatctl/csv.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/linalg.hpp"

namespace heatctl {

void SweepConfig::validate() const {
  spec.validate();
  if (alphas.empty()) throw ValidationError("alpha schedule is empty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i])) {
      throw ValidationError("alpha schedule entries must be positive");
    }
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw ValidationError("alpha schedule must be strictly increasing");
    }
  }
  if (mode == SweepMode::FixedControl && (!g || !q)) {
    throw ValidationError("fixed-control sweep needs g and q");
  }
}

double ConvergenceReport::relative(double gap, double reference) {
  return reference > 0.0 ? gap / reference : gap;
}

void ConvergenceReport::write_csv(std::ostream& out, bool timings) const {
  const bool optimal = mode == SweepMode::OptimalControl;
  out << "alpha,u_gap_V,u_gap_rel,u_gap_ratio,p_gap_V,p_gap_rel,p_gap_ratio";
  if (optimal) out << ",ctrl_gap_HQ,ctrl_gap_rel,ctrl_gap_ratio,g_gap_H,q_gap_Q";
  out << ",cost_alpha,cost_gap,cost_gap_rel,cost_gap_ratio";
  if (optimal) {
    out << ",bound_q_rhs,bound_q_holds,bound_g_rhs_M1,bound_g_M1_holds,bound_g_rhs_M2,"
           "bound_g_M2_holds,g_norm_H,q_norm_Q,ocp_iterations";
  }
  if (timings) out << ",seconds";
  out << '\n';

  // Ratio of consecutive gaps: the empirical reduction factor per step.
  auto ratio = [&](std::size_t i, double SweepRow::*gap) {
    if (i == 0) return std::string();
    const double now = rows[i].*gap;
    return format_double(now > 0.0 ? rows[i - 1].*gap / now : std::nan(""));
  };
  const auto flag = [](bool b) { return b ? "1" : "0"; };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << format_double(r.alpha) << ',' << format_double(r.u_gap_V) << ','
        << format_double(relative(r.u_gap_V, ref_u_norm_V)) << ',' << ratio(i, &SweepRow::u_gap_V)
        << ',' << format_double(r.p_gap_V) << ',' << format_double(relative(r.p_gap_V, ref_p_norm_V))
        << ',' << ratio(i, &SweepRow::p_gap_V);
    if (optimal) {
      out << ',' << format_double(r.ctrl_gap_HQ) << ','
          << format_double(relative(r.ctrl_gap_HQ, ref_ctrl_norm_HQ)) << ','
          << ratio(i, &SweepRow::ctrl_gap_HQ) << ',' << format_double(r.g_gap_H) << ','
          << format_double(r.q_gap_Q);
    }
    out << ',' << format_double(r.cost_alpha) << ',' << format_double(r.cost_gap) << ','
        << format_double(relative(r.cost_gap, std::abs(ref_cost))) << ','
        << ratio(i, &SweepRow::cost_gap);
    if (optimal) {
      out << ',' << format_double(r.bound_q_rhs) << ',' << flag(r.bound_q_holds()) << ','
          << format_double(r.bound_g_rhs_M1) << ',' << flag(r.bound_g_M1_holds()) << ','
          << format_double(r.bound_g_rhs_M2) << ',' << flag(r.bound_g_M2_holds()) << ','
          << format_double(r.g_norm_H) << ',' << format_double(r.q_norm_Q) << ','
          << r.ocp_iterations;
    }
    if (timings) out << ',' << format_double(r.seconds);
    out << '\n';
  }
}

ConvergenceReport run_alpha_sweep(const SweepConfig& config) {
  config.validate();
  const auto operators = build_operators(config.spec);

  ProblemSpec reference_spec = config.spec;
  reference_spec.bc = BcKind::Dirichlet;
  const Problem reference(operators, reference_spec);

  ConvergenceReport report;
  report.mode = config.mode;
  const bool optimal = config.mode == SweepMode::OptimalControl;

  ControlPair fixed_control;
  StateSolution ref_state;
  AdjointSolution ref_adjoint;
  ControlPair ref_control;
  if (optimal) {
    report.trace_norm = measure_trace_norm(*operators, false);
    const OcpSolution sol = solve_ocp(reference);
    ref_state = sol.state;
    ref_adjoint = sol.adjoint;
    ref_control = sol.control;
    report.ref_cost = sol.cost;
  } else {
    fixed_control = {interpolate(operators->mesh, config.g),
                     operators->trace.interpolate(operators->mesh, config.q)};
    ref_state = reference.solve_state(fixed_control);
    ref_adjoint = reference.solve_adjoint(ref_state);
    ref_control = fixed_control;
    report.ref_cost = cost(reference, fixed_control, ref_state);
  }
  report.ref_u_norm_V = reference.norm_V(ref_state.u);
  report.ref_p_norm_V = reference.norm_V(ref_adjoint.p);
  report.ref_ctrl_norm_HQ = reference.norm_HQ(ref_control);

  for (double alpha : config.alphas) {
    const auto start = std::chrono::steady_clock::now();
    const Problem robin = reference.with_boundary_condition(BcKind::Robin, alpha);
    SweepRow row;
    row.alpha = alpha;

    ControlPair control;
    StateSolution state;
    AdjointSolution adjoint;
    if (optimal) {
      OcpSolution sol = solve_ocp(robin);
      control = std::move(sol.control);
      state = std::move(sol.state);
      adjoint = std::move(sol.adjoint);
      row.cost_alpha = sol.cost;
      row.ocp_iterations = sol.iterations;
    } else {
      control = fixed_control;
      state = robin.solve_state(control);
      adjoint = robin.solve_adjoint(state);
      row.cost_alpha = cost(robin, control, state);
    }

    row.u_gap_V = reference.norm_V(subtract(state.u, ref_state.u));
    row.p_gap_V = reference.norm_V(subtract(adjoint.p, ref_adjoint.p));
    row.g_gap_H = reference.norm_H(subtract(control.g, ref_control.g));
    row.q_gap_Q = reference.norm_Q(subtract(control.q, ref_control.q));
    row.ctrl_gap_HQ = reference.norm_HQ(combine(1.0, control, -1.0, ref_control));
    row.cost_gap = std::abs(row.cost_alpha - report.ref_cost);
    row.bound_q_rhs = report.trace_norm / config.spec.M2 * row.p_gap_V;
    row.bound_g_rhs_M1 = row.p_gap_V / config.spec.M1;
    row.bound_g_rhs_M2 = row.p_gap_V / config.spec.M2;
    row.g_norm_H = reference.norm_H(control.g);
    row.q_norm_Q = reference.norm_Q(control.q);
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(row);
  }
  return report;
}

ProblemSpec random_spec(const ProblemSpec& base, std::uint64_t seed) {
  using std::numbers::pi;
  UniformStream s(seed);
  ProblemSpec spec = base;
  spec.M1 = std::pow(10.0, s.next(-1.5, 0.3));
  spec.M2 = std::pow(10.0, s.next(-1.5, 0.3));
  spec.alpha = std::pow(10.0, s.next(0.0, 2.0));
  const double b0 = s.next(0.1, 1.0), b1 = s.next(-0.1, 0.1);
  spec.b = [b0, b1](Point p) { return b0 + b1 * p.y; };
  const double c0 = s.next(-2, 2), c1 = s.next(-2, 2), c2 = s.next(-2, 2), c3 = s.next(-2, 2);
  spec.z_d = [=](Point p) {
    return c0 + c1 * p.x + c2 * p.y + c3 * std::sin(pi * p.x) * std::sin(pi * p.y);
  };
  spec.target_is_uncontrolled_state = false;
  return spec;
}

EstimateReport run_estimate_report(const ProblemSpec& spec, Index seed_count, std::uint64_t seed,
                                   const std::vector<double>& alphas) {
  EstimateReport report;
  const auto operators = build_operators(spec);

  auto run_case = [&](const Problem& problem, Index case_id, std::uint64_t case_seed) {
    EstimateOptions opts;
    opts.case_id = case_id;
    opts.seed = case_seed;
    report.append(verify_estimates(problem, estimate_constants(problem), opts));
  };

  const Problem base(operators, spec);
  run_case(base, 0, seed);
  for (Index k = 1; k <= seed_count; ++k) {
    const std::uint64_t case_seed = seed * 1000003ULL + k;
    const Problem dirichlet(operators, [&] {
      ProblemSpec s = random_spec(spec, case_seed);
      s.bc = BcKind::Dirichlet;
      return s;
    }());
    run_case(dirichlet, k, case_seed);
    run_case(dirichlet.with_boundary_condition(BcKind::Robin, dirichlet.alpha()), k, case_seed);
  }

  // Boundedness of the optimal controls along the alpha schedule.
  std::vector<ControlPair> controls;
  std::vector<double> misfits;
  for (double alpha : alphas) {
    const Problem robin = base.with_boundary_condition(BcKind::Robin, alpha);
    const OcpSolution sol = solve_ocp(robin);
    misfits.push_back(robin.norm_H(subtract(sol.state.u, robin.z_d())));
    controls.push_back(sol.control);
  }
  double max_g = 0.0, max_q = 0.0, max_misfit = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    max_g = std::max(max_g, base.norm_H(controls[i].g));
    max_q = std::max(max_q, base.norm_Q(controls[i].q));
    max_misfit = std::max(max_misfit, misfits[i]);
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    auto info = [&](std::string check, double lhs, double rhs) {
      report.rows.push_back({0, BcKind::Robin, alphas[i], std::move(check), lhs, rhs, false});
    };
    info("apriori_misfit_norm", misfits[i], max_misfit);
    info("apriori_g_norm", base.norm_H(controls[i].g), max_g);
    info("apriori_q_norm", base.norm_Q(controls[i].q), max_q);
  }
  return report;
}

}  // namespace heatctl
