#pragma once

#include <cstdint>

#include "dsim/dataset.hpp"
#include "dsim/similarity.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// minimize x' Q x + c' x subject to x >= 0, sum x = 1. Q is symmetrized
/// on construction.
struct QpProblem {
  Matrix q;
  Vector linear;

  QpProblem(Matrix q_in, Vector linear_in);
};

struct QpSolution {
  Weights weights;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Euclidean projection onto the probability simplex (sort-and-threshold).
Vector project_simplex(const Vector& v);

/// Projected gradient descent with backtracking line search from the uniform
/// start. Stops when |x - project_simplex(x - grad)|_inf <= tol or at
/// max_iter. Throws NumericalError if the objective turns non-finite.
QpSolution solve_simplex_qp(const QpProblem& problem, double tol = 1e-8,
                            int max_iter = 10000);

/// Eigenvalues ascending; eigenvectors in the matching columns, orthonormal,
/// each with its largest-magnitude component made positive.
struct EigenResult {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
/// 1e-12 * |A|_F. Deterministic sweep order; throws NumericalError after
/// 50 sweeps without convergence.
EigenResult eigen_symmetric(const Matrix& a);

/// The k smallest eigenpairs from eigen_symmetric.
EigenResult smallest_eigenvectors(const Matrix& a, int k);

/// k-means++ seeding followed by Lloyd iterations to an assignment fixpoint;
/// best of `restarts` runs by within-cluster sum of squares. A cluster that
/// empties is re-seeded at the point farthest from its nearest centroid.
/// Returns cluster ids 1..c; deterministic per seed.
Labeling kmeans(const Matrix& rows, int c, std::uint64_t seed,
                int restarts = 1);

}  // namespace dsim
