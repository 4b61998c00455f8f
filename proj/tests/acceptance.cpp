// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "heatctl/cli.hpp"
#include "heatctl/config.hpp"
#include "heatctl/constants.hpp"
#include "heatctl/control.hpp"
#include "heatctl/csv.hpp"
#include "heatctl/experiments.hpp"
#include "support.hpp"

using namespace heatctl;
using heatctl::test::generic_spec;
using heatctl::test::random_control;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome manufactured_exactness() {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Robin}) {
    for (Index n : {4u, 16u, 32u}) {
      const auto start = Clock::now();
      ProblemSpec spec;
      spec.n = n;
      spec.bc = bc;
      spec.alpha = 2.0;
      const double b = bc == BcKind::Robin ? -1.0 / spec.alpha : 0.0;
      spec.b = [b](Point) { return b; };
      const Problem problem(spec);
      const auto& ops = problem.operators();
      const ControlPair control{
          Vector(problem.num_vertices(), 0.0),
          ops.trace.interpolate(ops.mesh, [](Point, Side s) { return s == Side::Right ? -1.0 : 0.0; })};
      const Vector u = problem.solve_state(control).u;
      const double err = heatctl::test::max_abs_diff(u, interpolate(ops.mesh, [](Point p) { return p.x; }));
      const double t = seconds_since(start);
      worst = std::max(worst, err);
      slowest = std::max(slowest, t);
      if (err > 1e-10 || t >= 1.0) o.pass = false;
    }
  }
  o.detail = "max nodal error " + format_double(worst) + ", slowest solve " + format_double(slowest) + " s";
  return o;
}

Outcome adjoint_order() {
  const auto start = Clock::now();
  const double c = 1.0;
  std::vector<double> errors;
  for (Index n : {8u, 16u, 32u, 64u}) {
    ProblemSpec spec;
    spec.n = n;
    const Problem problem(spec);
    const AdjointSolution a = problem.solve_adjoint_for_misfit(Vector(problem.num_vertices(), c));
    errors.push_back(heatctl::test::l2_error(problem.mesh(), a.p,
                                             [c](Point p) { return c * (p.x - 0.5 * p.x * p.x); }));
  }
  Outcome o;
  double min_order = INFINITY;
  for (std::size_t k = 1; k < errors.size(); ++k) min_order = std::min(min_order, std::log2(errors[k - 1] / errors[k]));
  const double t = seconds_since(start);
  o.pass = min_order >= 1.9 && t < 30.0;
  o.detail = "min observed L2 order " + format_double(min_order) + " in " + format_double(t) + " s";
  return o;
}

Outcome adjoint_identity() {
  Outcome o;
  double worst = 0.0;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Robin}) {
    const Problem problem(generic_spec(16, bc));
    UniformStream s(2024);
    const AdjointSolution p = problem.solve_adjoint(problem.solve_state(random_control(problem, s)));
    const Vector tp = problem.operators().trace.trace(p.p);
    for (int k = 0; k < 20; ++k) {
      const ControlPair d = random_control(problem, s);
      const double lhs = problem.state_operator().bilinear_form(p.p, problem.state_increment(d));
      worst = std::max(worst, std::abs(lhs - problem.inner_H(d.g, p.p) + problem.inner_Q(d.q, tp)));
    }
  }
  o.pass = worst <= 1e-10;
  o.detail = "max defect " + format_double(worst);
  return o;
}

Outcome gradient_check() {
  Outcome o;
  double worst = 0.0;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Robin}) {
    ProblemSpec spec = generic_spec(16, bc);
    spec.pde_tol = 1e-13;
    const Problem problem(spec);
    UniformStream s(7);
    const ControlPair x = random_control(problem, s);
    const ControlPair grad = gradient(problem, x, problem.solve_adjoint(problem.solve_state(x)));
    auto J = [&](const ControlPair& y) { return cost(problem, y, problem.solve_state(y)); };
    for (int k = 0; k < 5; ++k) {
      const ControlPair d = random_control(problem, s);
      const double h = 1e-5;
      const double fd = (J(combine(1, x, h, d)) - J(combine(1, x, -h, d))) / (2 * h);
      const double pairing = problem.inner_HQ(grad, d);
      worst = std::max(worst, std::abs(fd - pairing) / std::abs(pairing));
    }
  }
  o.pass = worst <= 1e-6;
  o.detail = "max relative error " + format_double(worst);
  return o;
}

Outcome convexity_identity() {
  Outcome o;
  double worst = 0.0;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Robin}) {
    const Problem problem(generic_spec(16, bc));
    UniformStream s(99);
    for (int k = 0; k < 10; ++k) {
      const ControlPair x1 = random_control(problem, s), x2 = random_control(problem, s);
      const StateSolution u1 = problem.solve_state(x1), u2 = problem.solve_state(x2);
      const double sq_u = std::pow(problem.norm_H(subtract(u2.u, u1.u)), 2);
      const double sq_g = std::pow(problem.norm_H(subtract(x2.g, x1.g)), 2);
      const double sq_q = std::pow(problem.norm_Q(subtract(x2.q, x1.q)), 2);
      for (double t : {0.25, 0.5, 0.75}) {
        const ControlPair blend = combine(t, x1, 1 - t, x2);
        const double lhs = (1 - t) * cost(problem, x2, u2) + t * cost(problem, x1, u1) -
                           cost(problem, blend, problem.solve_state(blend));
        const double rhs = t * (1 - t) / 2 * (sq_u + problem.M1() * sq_g + problem.M2() * sq_q);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  o.pass = worst <= 1e-9;
  o.detail = "max defect " + format_double(worst);
  return o;
}

Outcome fixed_point_vs_projected_gradient() {
  Outcome o;
  std::ostringstream detail;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Robin}) {
    ProblemSpec spec;
    spec.n = 16;
    spec.bc = bc;
    spec.alpha = 10.0;
    spec.M1 = spec.M2 = 40.0;
    spec.z_d = [](Point) { return -1.0; };
    spec.ocp_tol = 1e-11;
    const Problem problem(spec);
    const double C0 = estimate_constants(problem).contraction(bc);
    const FixedPointResult fp = fixed_point_solve(problem, problem.zero_control(), 1e-12);
    const OcpSolution pg = solve_ocp(problem);
    double min_q = INFINITY, max_ratio = 0.0;
    for (double v : fp.control.q) min_q = std::min(min_q, v);
    for (double r : fp.ratios) max_ratio = std::max(max_ratio, r);
    const double gap = problem.norm_HQ(combine(1.0, pg.control, -1.0, fp.control));
    const bool ok = C0 < 1.0 && min_q >= 0.0 && gap <= 1e-8 && max_ratio <= C0;
    o.pass = o.pass && ok;
    detail << (bc == BcKind::Dirichlet ? "dirichlet" : "robin") << ": C0 " << format_double(C0)
           << ", min q " << format_double(min_q) << ", max ratio " << format_double(max_ratio) << ", gap " << format_double(gap) << "; ";
  }
  o.detail = detail.str();
  return o;
}

Outcome estimate_suite() {
  const auto start = Clock::now();
  const ProblemSpec spec = ExperimentConfig{}.problem_spec(16);
  const EstimateReport report = run_estimate_report(spec, 5, 1);
  Outcome o;
  std::size_t asserted = 0, failed = 0;
  for (const EstimateRow& row : report.rows) {
    if (!row.asserted) continue;
    ++asserted;
    if (!row.pass()) ++failed;
  }
  const double t = seconds_since(start);
  o.pass = failed == 0 && asserted > 0 && t < 120.0;
  o.detail = std::to_string(asserted - failed) + "/" + std::to_string(asserted) + " inequalities hold in " +
             format_double(t) + " s";
  return o;
}

Outcome alpha_sweep() {
  const auto start = Clock::now();
  SweepConfig cfg;
  cfg.spec = ExperimentConfig{}.problem_spec(16);
  const ConvergenceReport r = run_alpha_sweep(cfg);
  Outcome o;
  const auto decreasing = [&](double SweepRow::*gap) {
    for (std::size_t i = 1; i < r.rows.size(); ++i)
      if (!(r.rows[i].*gap < r.rows[i - 1].*gap)) return false;
    return true;
  };
  const bool monotone = decreasing(&SweepRow::u_gap_V) && decreasing(&SweepRow::p_gap_V) &&
                        decreasing(&SweepRow::ctrl_gap_HQ) && decreasing(&SweepRow::cost_gap);
  const SweepRow& last = r.rows.back();
  const double worst_rel = std::max({ConvergenceReport::relative(last.u_gap_V, r.ref_u_norm_V),
                                     ConvergenceReport::relative(last.p_gap_V, r.ref_p_norm_V),
                                     ConvergenceReport::relative(last.ctrl_gap_HQ, r.ref_ctrl_norm_HQ),
                                     ConvergenceReport::relative(last.cost_gap, std::abs(r.ref_cost))});
  bool bound = true;
  for (const SweepRow& row : r.rows) bound = bound && row.bound_q_holds();
  const double t = seconds_since(start);
  o.pass = r.rows.size() == 7 && monotone && worst_rel <= 1e-3 && bound && t < 180.0;
  o.detail = std::string("monotone ") + (monotone ? "yes" : "no") + ", worst final relative gap " +
             format_double(worst_rel) + ", boundary bound " + (bound ? "holds" : "violated") + ", " +
             format_double(t) + " s";
  return o;
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "heatctl_acceptance";
  fs::create_directories(dir);
  std::ofstream(dir / "run.toml") << "n = 8\nseeds = 2\nalphas = \"1:1e3:x10\"\n";
  Outcome o;
  for (const char* sub : {"solve", "sweep", "estimates", "eigen"}) {
    std::string first;
    for (int k = 0; k < 2; ++k) {
      const fs::path out = dir / (std::string(sub) + std::to_string(k) + ".csv");
      std::ostringstream sink_out, sink_err;
      const int code = cli_main({sub, "--config", (dir / "run.toml").string(), "--seed", "5", "--out", out.string()},
                                sink_out, sink_err);
      std::ifstream in(out, std::ios::binary);
      const std::string text{std::istreambuf_iterator<char>(in), {}};
      if (code != 0 || text.empty()) o.pass = false;
      if (k == 0) first = text;
      else if (text != first) o.pass = false;
    }
  }
  o.detail = "solve, sweep, estimates, eigen run twice each";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"manufactured exactness", manufactured_exactness},
      {"adjoint convergence order", adjoint_order},
      {"discrete adjoint identity", adjoint_identity},
      {"gradient check", gradient_check},
      {"convexity identity", convexity_identity},
      {"fixed point vs projected gradient", fixed_point_vs_projected_gradient},
      {"estimate suite", estimate_suite},
      {"alpha sweep", alpha_sweep},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (k + 1) << "] " << criteria[k].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
