#pragma once

#include "heatctl/fem.hpp"
#include "heatctl/pde.hpp"

namespace heatctl {

/// Measured discrete constants of the state operators, all in the V-Gram
/// K + M_H.
struct ConstantEstimates {
  double alpha = 1.0;          ///< coefficient used for lambda_alpha
  double lambda = 0.0;         ///< coercivity of a on V0
  double lambda_alpha = 0.0;   ///< coercivity of a + alpha(.,.)_R on V
  double trace_norm = 0.0;     ///< ||gamma0|| measured on V
  double trace_norm_v0 = 0.0;  ///< ||gamma0|| measured on V0
  double C0 = 0.0;
  double C0_alpha = 0.0;

  /// lambda or lambda_alpha according to the boundary condition kind.
  double coercivity(BcKind bc) const { return bc == BcKind::Dirichlet ? lambda : lambda_alpha; }
  double contraction(BcKind bc) const { return bc == BcKind::Dirichlet ? C0 : C0_alpha; }
};

/// (sqrt(2)/c^2) * sqrt(1/M1^2 + t^2/M2^2) * (1 + t) for coercivity c and
/// trace norm t.
double contraction_constant(double coercivity, double trace_norm, double M1, double M2);

double measure_coercivity_dirichlet(const FemOperators& ops);
double measure_coercivity_robin(const FemOperators& ops, double alpha);
double measure_trace_norm(const FemOperators& ops, bool restrict_to_v0);

/// All constants for the problem's mesh, weights and alpha.
ConstantEstimates estimate_constants(const Problem& problem);

}  // namespace heatctl
