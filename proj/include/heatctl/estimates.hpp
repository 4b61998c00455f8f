#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heatctl/constants.hpp"
#include "heatctl/control.hpp"
#include "heatctl/pde.hpp"

namespace heatctl {

/// One inequality lhs <= rhs evaluated numerically.
struct EstimateRow {
  Index case_id = 0;
  BcKind bc = BcKind::Dirichlet;
  double alpha = 0.0;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Informational rows are reported but never fail.
  bool asserted = true;

  double slack() const { return rhs - lhs; }
  bool pass() const { return !asserted || slack() >= 0.0; }
};

struct EstimateReport {
  std::vector<EstimateRow> rows;

  bool all_pass() const;
  void append(const EstimateReport& other);
  /// Header: case,bc,alpha,check,lhs,rhs,slack,pass
  void write_csv(std::ostream& out) const;
};

struct EstimateOptions {
  std::uint64_t seed = 1;
  Index random_samples = 5;  ///< pairs for the Lipschitz checks
  Index frozen_samples = 3;  ///< random frozen controls for the cost comparisons
  Index case_id = 0;
};

/// Solves the vectorial problem and both scalar problems and evaluates:
///  - the scalar-vs-vectorial control estimates, with the scalar problems
///    frozen at the vectorial optimum's other component;
///  - J(optimum) <= J1(g_bar), J2(q_bar) for random frozen components;
///  - the state, adjoint and W Lipschitz bounds on random control pairs;
///  - the optimality variational inequality on random admissible controls.
/// Constants are the measured coercivity (lambda or lambda_alpha by kind)
/// and the trace norm on V.
EstimateReport verify_estimates(const Problem& problem, const ConstantEstimates& constants,
                                const EstimateOptions& options = {});

}  // namespace heatctl
