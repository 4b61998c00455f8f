#include "heatctl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "heatctl/csv.hpp"
#include "heatctl/errors.hpp"

namespace heatctl {

double UniformStream::next(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Vector UniformStream::vector(Index n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = next(lo, hi);
  return v;
}

SolveReport solve_spd(const SymmetricSparseMatrix& A, std::span<const double> rhs, double tol,
                      std::span<const double> initial_guess) {
  const Index n = A.dimension();
  if (rhs.size() != n) throw ValidationError("solve_spd: right-hand side has wrong size");
  if (!(tol > 0.0)) throw ValidationError("solve_spd: tolerance must be positive");

  SolveReport report;
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    report.solution.assign(n, 0.0);
    return report;
  }

  Vector inv_diag = A.diagonal_entries();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw SolverFailure("solve_spd: matrix has a non-positive diagonal", 1.0, 0);
    d = 1.0 / d;
  }

  Vector x = initial_guess.empty() ? Vector(n, 0.0)
                                   : Vector(initial_guess.begin(), initial_guess.end());
  Vector r(rhs.begin(), rhs.end());
  axpy(-1.0, A * x, r);

  Vector z(n), p(n), Ap(n);
  auto precondition = [&] {
    for (Index i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  };
  precondition();
  p = z;
  double rz = dot(r, z);

  const Index cap = 20 * std::max<Index>(n, 1);
  double relative = norm2(r) / rhs_norm;
  if (relative <= tol) {
    report.solution = std::move(x);
    report.relative_residual = relative;
    return report;
  }

  for (Index it = 1; it <= cap; ++it) {
    A.multiply(p, Ap);
    const double pAp = dot(p, Ap);
    if (!(pAp > 0.0)) {
      throw SolverFailure("solve_spd: breakdown, matrix not positive definite", relative, it);
    }
    const double step = rz / pAp;
    axpy(step, p, x);
    axpy(-step, Ap, r);
    relative = norm2(r) / rhs_norm;

    if (relative <= tol) {
      // The recursive residual drifts; confirm with the true one and restart
      // the Krylov sequence from it if needed.
      r.assign(rhs.begin(), rhs.end());
      axpy(-1.0, A * x, r);
      relative = norm2(r) / rhs_norm;
      if (relative <= tol) {
        report.solution = std::move(x);
        report.iterations = it;
        report.relative_residual = relative;
        return report;
      }
      precondition();
      p = z;
      rz = dot(r, z);
      continue;
    }

    precondition();
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (Index i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverFailure("solve_spd: no convergence within " + std::to_string(cap) +
                          " iterations, relative residual " + format_double(relative),
                      relative, cap);
}

namespace {

constexpr std::uint64_t kEigenStartSeed = 0x5eed'2014'0122ULL;

double trace_of(const SymmetricSparseMatrix& M) {
  double t = 0.0;
  for (double d : M.diagonal_entries()) t += d;
  return t;
}

}  // namespace

EigenPair extreme_generalized_eigenvalue(const SymmetricSparseMatrix& A,
                                         const SymmetricSparseMatrix& B, Extreme which,
                                         double tol, Index max_iterations) {
  const Index n = A.dimension();
  if (B.dimension() != n || n == 0) throw ValidationError("eigen: incompatible pencil");

  // Lanczos in the B inner product on an operator that is B-self-adjoint and
  // whose largest eigenvalue maps to the wanted end of the pencil:
  //   Largest:  B^{-1} A
  //   Smallest: (A - sigma B)^{-1} B, with sigma slightly negative so that the
  //             shifted matrix stays definite when A is only semidefinite.
  const double scale = std::abs(trace_of(A)) / trace_of(B);
  const double sigma = -1e-10 * scale;
  const SymmetricSparseMatrix shifted = SymmetricSparseMatrix::combine(1.0, A, -sigma, B);
  const double inner_tol = 1e-12;

  auto apply = [&](const Vector& v) {
    if (which == Extreme::Largest) return solve_spd(B, A * v, inner_tol).solution;
    return solve_spd(shifted, B * v, inner_tol).solution;
  };

  UniformStream stream(kEigenStartSeed);
  Vector v = stream.vector(n, 0.5, 1.5);
  std::vector<Vector> basis, b_basis;  // v_j and B v_j
  std::vector<double> diag, offdiag;

  auto push = [&](Vector vec) -> bool {
    Vector bv = B * vec;
    const double bnorm = std::sqrt(dot(vec, bv));
    if (!(bnorm > 0.0) || !std::isfinite(bnorm)) return false;
    for (Index i = 0; i < n; ++i) {
      vec[i] /= bnorm;
      bv[i] /= bnorm;
    }
    basis.push_back(std::move(vec));
    b_basis.push_back(std::move(bv));
    return true;
  };
  if (!push(std::move(v))) throw EigenFailure("eigen: start vector has zero B-norm", 0.0, 0);

  auto ritz_pair = [&](bool want_vector) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    const Eigen::Map<const Eigen::VectorXd> d(diag.data(), static_cast<Eigen::Index>(diag.size()));
    const Eigen::Map<const Eigen::VectorXd> e(offdiag.data(),
                                              static_cast<Eigen::Index>(diag.size()) - 1);
    tri.computeFromTridiagonal(d, e, want_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (tri.info() != Eigen::Success) throw EigenFailure("eigen: tridiagonal solve failed", 0.0, diag.size());
    return tri;
  };

  auto finish = [&](Index iterations) {
    const auto tri = ritz_pair(true);
    const Eigen::Index last = tri.eigenvalues().size() - 1;
    Vector x(n, 0.0);
    for (std::size_t j = 0; j < diag.size(); ++j) axpy(tri.eigenvectors()(static_cast<Eigen::Index>(j), last), basis[j], x);
    const double bnorm = std::sqrt(B.quadratic_form(x));
    for (double& xi : x) xi /= bnorm;
    const double rq = A.quadratic_form(x);
    if (!std::isfinite(rq)) throw EigenFailure("eigen: non-finite Rayleigh quotient", rq, iterations);
    return EigenPair{rq, std::move(x), iterations};
  };

  const Index cap = std::min(n, max_iterations);
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (Index it = 1; it <= cap; ++it) {
    Vector w = apply(basis.back());
    diag.push_back(dot(w, b_basis.back()));
    // Full reorthogonalization, twice, keeps the basis B-orthonormal despite
    // the inexact inner solves.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < basis.size(); ++j) axpy(-dot(w, b_basis[j]), basis[j], w);
    }
    const double theta = ritz_pair(false).eigenvalues().maxCoeff();
    if (!std::isfinite(theta)) throw EigenFailure("eigen: non-finite Ritz value", theta, it);
    const bool settled = it > 1 && std::abs(theta - previous) <= tol * std::abs(theta);
    if (settled || it == cap) return finish(it);
    previous = theta;

    const double beta = std::sqrt(std::max(0.0, B.quadratic_form(w)));
    if (!(beta > 1e-14 * std::abs(theta))) return finish(it);  // invariant subspace found
    offdiag.push_back(beta);
    if (!push(std::move(w))) return finish(it);
  }
  throw EigenFailure("eigen: Ritz values did not settle", previous, cap);
}

}  // namespace heatctl
