#include "heatctl/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "heatctl/csv.hpp"
#include "heatctl/linalg.hpp"

namespace heatctl {

bool EstimateReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const EstimateRow& r) { return r.pass(); });
}

void EstimateReport::append(const EstimateReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void EstimateReport::write_csv(std::ostream& out) const {
  out << "case,bc,alpha,check,lhs,rhs,slack,pass\n";
  for (const auto& r : rows) {
    out << r.case_id << ',' << (r.bc == BcKind::Dirichlet ? "dirichlet" : "robin") << ','
        << (r.bc == BcKind::Dirichlet ? std::string("inf") : format_double(r.alpha)) << ','
        << r.check << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << format_double(r.slack()) << ',' << (!r.asserted ? "info" : r.pass() ? "pass" : "fail")
        << '\n';
  }
}

namespace {

ControlPair random_control(const Problem& problem, UniformStream& stream, bool admissible) {
  ControlPair c{stream.vector(problem.num_vertices()), stream.vector(problem.trace_size())};
  if (admissible) c.q = project_admissible(c.q);
  return c;
}

}  // namespace

EstimateReport verify_estimates(const Problem& problem, const ConstantEstimates& constants,
                                const EstimateOptions& options) {
  const BcKind bc = problem.bc();
  const double coercivity = constants.coercivity(bc);
  const double contraction = constants.contraction(bc);
  const double gamma = constants.trace_norm;
  const double M1 = problem.M1(), M2 = problem.M2();

  EstimateReport report;
  auto add = [&](std::string check, double lhs, double rhs) {
    report.rows.push_back({options.case_id, bc, problem.alpha(), std::move(check), lhs, rhs, true});
  };

  const OcpSolution opt = solve_ocp(problem);
  const ControlPair& best = opt.control;

  // The scalar problems frozen at the vectorial optimum's other component.
  OcpOptions warm;
  warm.initial = best;
  const OcpSolution sq = solve_scalar_q(problem, best.g, warm);
  const OcpSolution sg = solve_scalar_g(problem, best.q, warm);
  add("scalar_q_estimate", problem.norm_Q(subtract(sq.control.q, best.q)),
      gamma / (coercivity * M2) * problem.norm_H(subtract(opt.state.u, sq.state.u)));
  add("scalar_g_estimate", problem.norm_H(subtract(sg.control.g, best.g)),
      1.0 / (coercivity * M1) * problem.norm_H(subtract(opt.state.u, sg.state.u)));

  UniformStream stream(options.seed);
  for (Index k = 0; k < options.frozen_samples; ++k) {
    const ControlPair frozen = random_control(problem, stream, true);
    add("cost_vs_scalar_g", opt.cost, solve_scalar_g(problem, frozen.q).cost);
    add("cost_vs_scalar_q", opt.cost, solve_scalar_q(problem, frozen.g).cost);
  }

  for (Index k = 0; k < options.random_samples; ++k) {
    const ControlPair x1 = random_control(problem, stream, false);
    const ControlPair x2 = random_control(problem, stream, false);
    const StateSolution u1 = problem.solve_state(x1), u2 = problem.solve_state(x2);
    const AdjointSolution p1 = problem.solve_adjoint(u1), p2 = problem.solve_adjoint(u2);
    const Vector du = subtract(u1.u, u2.u);

    add("lipschitz_state", problem.norm_V(du),
        (problem.norm_H(subtract(x2.g, x1.g)) + gamma * problem.norm_Q(subtract(x2.q, x1.q))) /
            coercivity);
    add("lipschitz_adjoint", problem.norm_V(subtract(p1.p, p2.p)),
        problem.norm_H(du) / coercivity);

    const ControlPair w1{scaled(-1.0 / M1, p1.p),
                         scaled(1.0 / M2, problem.operators().trace.trace(p1.p))};
    const ControlPair w2{scaled(-1.0 / M1, p2.p),
                         scaled(1.0 / M2, problem.operators().trace.trace(p2.p))};
    add("w_lipschitz", problem.norm_HQ(combine(1.0, w2, -1.0, w1)),
        contraction * problem.norm_HQ(combine(1.0, x2, -1.0, x1)));
  }

  // (h - g, M1 g + p)_H + (eta - q, M2 q - p)_Q >= -10 tol over admissible (h, eta).
  const ControlPair grad = gradient(problem, best, opt.adjoint);
  double worst = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < 10 * options.random_samples; ++k) {
    const ControlPair y = random_control(problem, stream, true);
    worst = std::min(worst, problem.inner_HQ(combine(1.0, y, -1.0, best), grad));
  }
  add("optimality_vi", -worst, 10.0 * problem.ocp_tol());

  return report;
}

}  // namespace heatctl
