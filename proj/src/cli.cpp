#include "heatctl/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "heatctl/catalog.hpp"
#include "heatctl/config.hpp"
#include "heatctl/constants.hpp"
#include "heatctl/control.hpp"
#include "heatctl/csv.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/experiments.hpp"

namespace heatctl {
namespace {

constexpr Index kDefaultN = 32;
constexpr Index kSweepDefaultN = 16;

struct Flags {
  std::string config;
  std::string mode;
  std::string alphas;
  std::string out;
  std::optional<Index> n;
  std::optional<std::uint64_t> seed;
  bool timings = false;
};

ExperimentConfig resolve(const Flags& flags) {
  ExperimentConfig cfg = flags.config.empty() ? ExperimentConfig{} : load_config(flags.config);
  if (flags.n) cfg.n = *flags.n;
  if (flags.seed) cfg.seed = *flags.seed;
  if (!flags.alphas.empty()) cfg.alphas = parse_alpha_schedule(flags.alphas);
  if (flags.mode == "fixed") {
    cfg.mode = SweepMode::FixedControl;
  } else if (flags.mode == "optimal") {
    cfg.mode = SweepMode::OptimalControl;
  } else if (!flags.mode.empty()) {
    throw ValidationError("--mode must be 'fixed' or 'optimal'");
  }
  return cfg;
}

// Writes to --out when given, otherwise to `fallback`.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  write(file);
}

void run_solve(const Flags& flags, std::ostream& out) {
  const ExperimentConfig cfg = resolve(flags);
  const Problem problem(cfg.problem_spec(kDefaultN));
  const OcpSolution sol = solve_ocp(problem);
  char j_text[64];
  std::snprintf(j_text, sizeof j_text, "%.16e", sol.cost);
  out << "J=" << j_text << '\n'
      << "residual=" << format_double(sol.residual) << '\n'
      << "iterations=" << sol.iterations << '\n';
  if (flags.out.empty()) return;

  emit(flags.out, out, [&](std::ostream& os) {
    const Mesh& mesh = problem.mesh();
    os << "field,index,x,y,side,value\n";
    auto nodal = [&](const char* name, const Vector& v) {
      for (Index i = 0; i < v.size(); ++i) {
        const Point p = mesh.vertex(i);
        os << name << ',' << i << ',' << format_double(p.x) << ',' << format_double(p.y) << ",,"
           << format_double(v[i]) << '\n';
      }
    };
    nodal("u", sol.state.u);
    nodal("p", sol.adjoint.p);
    nodal("g", sol.control.g);
    const TraceSpace& trace = problem.operators().trace;
    for (Index k = 0; k < trace.size(); ++k) {
      const Point p = mesh.vertex(trace.vertices()[k]);
      os << "q," << k << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
         << to_string(trace.sides()[k]) << ',' << format_double(sol.control.q[k]) << '\n';
    }
  });
}

void run_sweep(const Flags& flags, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = resolve(flags);
  SweepConfig sweep;
  sweep.spec = cfg.problem_spec(kSweepDefaultN);
  sweep.alphas = cfg.alpha_schedule();
  sweep.mode = cfg.mode;
  sweep.g = make_scalar_field(cfg.g);
  sweep.q = make_boundary_field(cfg.q);
  const ConvergenceReport report = run_alpha_sweep(sweep);
  for (const SweepRow& row : report.rows) {
    err << "alpha=" << format_double(row.alpha) << " seconds=" << format_double(row.seconds)
        << '\n';
  }
  emit(flags.out, out, [&](std::ostream& os) { report.write_csv(os, flags.timings); });
}

void run_estimates(const Flags& flags, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = resolve(flags);
  const EstimateReport report =
      run_estimate_report(cfg.problem_spec(kSweepDefaultN), cfg.seeds, cfg.seed, cfg.alpha_schedule());
  emit(flags.out, out, [&](std::ostream& os) { report.write_csv(os); });
  if (!report.all_pass()) err << "warning: some estimate rows failed\n";
}

void run_eigen(const Flags& flags, std::ostream& out) {
  const ExperimentConfig cfg = resolve(flags);
  const Problem problem(cfg.problem_spec(kDefaultN));
  const ConstantEstimates c = estimate_constants(problem);
  emit(flags.out, out, [&](std::ostream& os) {
    os << "constant,value\n"
       << "n," << problem.mesh().subdivisions() << '\n'
       << "alpha," << format_double(c.alpha) << '\n'
       << "lambda," << format_double(c.lambda) << '\n'
       << "lambda_alpha," << format_double(c.lambda_alpha) << '\n'
       << "trace_norm," << format_double(c.trace_norm) << '\n'
       << "trace_norm_v0," << format_double(c.trace_norm_v0) << '\n'
       << "M1," << format_double(problem.M1()) << '\n'
       << "M2," << format_double(problem.M2()) << '\n'
       << "C0," << format_double(c.C0) << '\n'
       << "C0_alpha," << format_double(c.C0_alpha) << '\n';
  });
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary and distributed optimal control of the Poisson equation", "heatctl"};
  app.require_subcommand(1, 1);

  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "key = value config file");
    sub->add_option("--out", flags.out, "output CSV path (default: stdout)");
    sub->add_option("--n", flags.n, "mesh subdivisions per side")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "random seed");
  };
  CLI::App* solve = app.add_subcommand("solve", "solve one optimal control problem");
  CLI::App* sweep = app.add_subcommand("sweep", "Robin-to-Dirichlet alpha sweep");
  CLI::App* estimates = app.add_subcommand("estimates", "evaluate the stability estimates");
  CLI::App* eigen = app.add_subcommand("eigen", "measure coercivity and trace constants");
  for (CLI::App* sub : {solve, sweep, estimates, eigen}) add_common(sub);
  sweep->add_option("--mode", flags.mode, "fixed | optimal");
  sweep->add_option("--alphas", flags.alphas, "start:end:xfactor");
  sweep->add_flag("--timings", flags.timings, "append per-alpha wall time column");
  estimates->add_option("--alphas", flags.alphas, "start:end:xfactor");

  std::vector<const char*> argv{"heatctl"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  try {
    if (solve->parsed()) run_solve(flags, out);
    if (sweep->parsed()) run_sweep(flags, out, err);
    if (estimates->parsed()) run_estimates(flags, out, err);
    if (eigen->parsed()) run_eigen(flags, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace heatctl
