#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "heatctl/sparse.hpp"

namespace heatctl {

inline constexpr double kDefaultSolveTolerance = 1e-12;
inline constexpr double kDefaultEigenTolerance = 1e-10;

struct SolveReport {
  Vector solution;
  Index iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients.
///
/// Stops once the true relative residual ||A x - rhs|| / ||rhs|| is at most
/// `tol`; gives up after 20*dimension iterations with SolverFailure.
/// A zero right-hand side returns the zero vector without iterating.
SolveReport solve_spd(const SymmetricSparseMatrix& A, std::span<const double> rhs,
                      double tol = kDefaultSolveTolerance,
                      std::span<const double> initial_guess = {});

enum class Extreme { Smallest, Largest };

struct EigenPair {
  double value = 0.0;
  Vector vector;  ///< normalized to unit B-norm
  Index iterations = 0;
};

/// Extreme eigenvalue of the pencil A x = mu B x with A symmetric positive
/// semidefinite and B symmetric positive definite.
///
/// Lanczos with full reorthogonalization in the B inner product, on
/// B^{-1} A for the largest value and on (A - sigma*B)^{-1} B (tiny negative
/// sigma) for the smallest. Stops when successive extreme Ritz values differ
/// by less than `tol` relative; the returned value is the Rayleigh quotient
/// of the Ritz vector.
EigenPair extreme_generalized_eigenvalue(const SymmetricSparseMatrix& A,
                                         const SymmetricSparseMatrix& B, Extreme which,
                                         double tol = kDefaultEigenTolerance,
                                         Index max_iterations = 20000);

/// Uniform samples in [lo, hi) from std::mt19937_64. The raw engine output
/// is fixed by the standard; the mapping to doubles is done here so results
/// do not depend on the library's distribution implementation.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next(double lo = 0.0, double hi = 1.0);
  Vector vector(Index n, double lo = -1.0, double hi = 1.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace heatctl
