#include "heatctl/constants.hpp"

#include <cmath>

#include "heatctl/errors.hpp"
#include "heatctl/linalg.hpp"

namespace heatctl {

double contraction_constant(double coercivity, double trace_norm, double M1, double M2) {
  if (!(coercivity > 0.0) || !(M1 > 0.0) || !(M2 > 0.0) || trace_norm < 0.0) {
    throw ValidationError("contraction constant needs positive coercivity and weights");
  }
  return std::sqrt(2.0) / (coercivity * coercivity) *
         std::sqrt(1.0 / (M1 * M1) + trace_norm * trace_norm / (M2 * M2)) * (1.0 + trace_norm);
}

double measure_coercivity_dirichlet(const FemOperators& ops) {
  DirichletReduction reduction(ops.stiffness, ops.gamma1_vertices);
  const auto gram = ops.v_gram.principal_submatrix(reduction.free_vertices());
  return extreme_generalized_eigenvalue(reduction.reduced_matrix(), gram, Extreme::Smallest).value;
}

double measure_coercivity_robin(const FemOperators& ops, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  const auto a_alpha = SymmetricSparseMatrix::combine(1.0, ops.stiffness, alpha, ops.gamma1_mass);
  return extreme_generalized_eigenvalue(a_alpha, ops.v_gram, Extreme::Smallest).value;
}

double measure_trace_norm(const FemOperators& ops, bool restrict_to_v0) {
  if (!restrict_to_v0) {
    return std::sqrt(
        extreme_generalized_eigenvalue(ops.gamma2_mass, ops.v_gram, Extreme::Largest).value);
  }
  DirichletReduction reduction(ops.stiffness, ops.gamma1_vertices);
  const auto free = reduction.free_vertices();
  return std::sqrt(extreme_generalized_eigenvalue(ops.gamma2_mass.principal_submatrix(free),
                                                  ops.v_gram.principal_submatrix(free),
                                                  Extreme::Largest)
                       .value);
}

ConstantEstimates estimate_constants(const Problem& problem) {
  const FemOperators& ops = problem.operators();
  ConstantEstimates c;
  c.alpha = problem.alpha();
  c.lambda = measure_coercivity_dirichlet(ops);
  c.lambda_alpha = measure_coercivity_robin(ops, c.alpha);
  c.trace_norm = measure_trace_norm(ops, false);
  c.trace_norm_v0 = measure_trace_norm(ops, true);
  c.C0 = contraction_constant(c.lambda, c.trace_norm, problem.M1(), problem.M2());
  c.C0_alpha = contraction_constant(c.lambda_alpha, c.trace_norm, problem.M1(), problem.M2());
  return c;
}

}  // namespace heatctl
