#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatctl/pde.hpp"

namespace heatctl {

enum class SweepMode { FixedControl, OptimalControl };

/// Everything a CLI run needs, read from a flat key = value file.
///
/// Recognized keys: n, gamma1_sides, bc, alpha, M1, M2, b, z_d, g, q,
/// pde_tol, ocp_tol, mode, alphas, seed, seeds. Data keys (b, z_d, g, q)
/// take catalog names; z_d = "u00" selects the uncontrolled state.
struct ExperimentConfig {
  std::optional<Index> n;
  std::vector<Side> gamma1_sides{Side::Left};
  BcKind bc = BcKind::Dirichlet;
  double alpha = 1.0;
  double M1 = 0.1;
  double M2 = 0.1;
  std::string b = "constant:1";
  std::string z_d = "manufactured_1";
  std::string g = "constant:1";          ///< fixed-control sweeps only
  std::string q = "constant:0.5";        ///< fixed-control sweeps only
  double pde_tol = 1e-12;
  double ocp_tol = 1e-8;
  SweepMode mode = SweepMode::OptimalControl;
  std::vector<double> alphas;            ///< empty: 1, 10, ..., 1e6
  std::uint64_t seed = 1;
  Index seeds = 5;

  /// ProblemSpec with the given mesh size when `n` was not set.
  ProblemSpec problem_spec(Index default_n) const;
  std::vector<double> alpha_schedule() const;
};

/// Parses config text; throws ValidationError with the offending line.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file; a missing file is a ValidationError naming it.
ExperimentConfig load_config(const std::filesystem::path& path);

/// "start:end:xfactor", e.g. "1:1e6:x10" -> 1, 10, ..., 1e6.
std::vector<double> parse_alpha_schedule(std::string_view text);

std::vector<double> default_alpha_schedule();

}  // namespace heatctl
