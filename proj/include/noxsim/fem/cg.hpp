#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/fem/sparse.hpp"

namespace noxsim::fem {

struct SolveStats {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. `x` holds the
/// initial guess on entry. Stops once ||Ax - b|| <= tol ||b||, or once the
/// residual is down to rounding level (1e3 eps max(||b||, ||r0||)) when b
/// itself is cancellation noise; more than 10 n iterations is a SolverFailure.
inline SolveStats solve_spd(const SparseOperator& A, std::span<const double> b, std::span<double> x,
                            double tol = 1e-10) {
  const Index n = A.dimension();
  if (b.size() != n || x.size() != n) throw Error("solve_spd: dimension mismatch");

  const double bnorm = norm2(b);
  if (!std::isfinite(bnorm)) throw SolverFailure("solve_spd: right-hand side is not finite", bnorm, 0);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {};
  }

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw SolverFailure("solve_spd: nonpositive diagonal, operator is not SPD", 1.0, 0);
    d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  A.multiply(x, r);
  for (Index i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rnorm = norm2(r);
  if (rnorm <= tol * bnorm) return {0, rnorm / bnorm};
  const double target = std::max(tol * bnorm, 1e3 * std::numeric_limits<double>::epsilon() * std::max(bnorm, rnorm));

  for (Index i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  const std::size_t cap = 10 * n;
  for (std::size_t it = 1; it <= cap; ++it) {
    A.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) throw SolverFailure("solve_spd: breakdown, operator is not SPD", rnorm / bnorm, it);
    const double alpha = rz / pq;
    for (Index i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    rnorm = norm2(r);
    if (rnorm <= target) {
      // Confirm with the true residual; recursion drift can fake convergence.
      A.multiply(x, q);
      double true_norm = 0.0;
      for (Index i = 0; i < n; ++i) {
        r[i] = b[i] - q[i];
        true_norm += r[i] * r[i];
      }
      true_norm = std::sqrt(true_norm);
      if (true_norm <= target) return {it, true_norm / bnorm};
      rnorm = true_norm;
    }
    for (Index i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (Index i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverFailure("solve_spd: iteration cap exceeded", rnorm / bnorm, cap);
}

inline std::vector<double> solve_spd(const SparseOperator& A, std::span<const double> b, double tol = 1e-10) {
  std::vector<double> x(b.size(), 0.0);
  solve_spd(A, b, x, tol);
  return x;
}

}  // namespace noxsim::fem
