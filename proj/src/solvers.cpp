#include "dsim/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dsim/rng.hpp"

namespace dsim {

QpProblem::QpProblem(Matrix q_in, Vector linear_in)
    : q(std::move(q_in)), linear(std::move(linear_in)) {
  if (q.rows() != q.cols()) throw std::invalid_argument("Q must be square");
  if (linear.size() != q.rows()) throw std::invalid_argument("linear term size mismatch");
  q = 0.5 * (q + q.transpose()).eval();
}

Vector project_simplex(const Vector& v) {
  if (v.size() == 0) throw std::invalid_argument("empty vector");
  if (!v.allFinite()) throw std::invalid_argument("non-finite input");
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).cwiseMax(0.0);
}

QpSolution solve_simplex_qp(const QpProblem& problem, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  const Eigen::Index n = problem.q.rows();
  const auto objective = [&](const Vector& x) {
    return x.dot(problem.q * x) + problem.linear.dot(x);
  };

  Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  double fx = objective(x);
  if (!std::isfinite(fx)) throw NumericalError("simplex QP: non-finite objective");

  // Gradient Lipschitz constant of x'Qx is 2|Q|_2 <= 2 trace(Q) for PSD Q;
  // backtracking recovers from an optimistic estimate.
  const double trace = problem.q.trace();
  const double step0 = 1.0 / std::max(trace, 1e-12);
  double step = step0;

  QpSolution result;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    step = std::min(2.0 * step, step0);
    const Vector grad = 2.0 * (problem.q * x) + problem.linear;
    const double residual = (x - project_simplex(x - grad)).cwiseAbs().maxCoeff();
    result.kkt_residual = residual;
    if (residual <= tol) {
      result.converged = true;
      break;
    }
    Vector candidate;
    double fc = fx;
    for (int halvings = 0; halvings < 60; ++halvings) {
      candidate = project_simplex(x - step * grad);
      fc = objective(candidate);
      if (!std::isfinite(fc)) throw NumericalError("simplex QP: non-finite objective");
      const Vector delta = candidate - x;
      if (fc <= fx + grad.dot(delta) + delta.squaredNorm() / (2.0 * step)) break;
      step *= 0.5;
    }
    if (fc > fx) break;  // line search exhausted; stationary up to roundoff
    x = candidate;
    fx = fc;
  }

  result.weights = Weights{x};
  result.objective = fx;
  result.iterations = iter;
  result.kkt_residual =
      (x - project_simplex(x - (2.0 * (problem.q * x) + problem.linear))).cwiseAbs().maxCoeff();
  if (result.kkt_residual <= tol) result.converged = true;
  return result;
}

namespace {

// One cyclic Jacobi sweep over the strict upper triangle.
void jacobi_rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const double app = a(p, p);
  const double aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r != p && r != q) {
      const double arp = a(r, p);
      const double arq = a(r, q);
      a(r, p) = arp - s * (arq + tau * arp);
      a(p, r) = a(r, p);
      a(r, q) = arq + s * (arp - tau * arq);
      a(q, r) = a(r, q);
    }
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = vrp - s * (vrq + tau * vrp);
    v(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

EigenResult eigen_symmetric(const Matrix& input) {
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("matrix must be square");
  if (!input.allFinite()) throw std::invalid_argument("non-finite entries");
  if ((input - input.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, input.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("matrix is not symmetric");

  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double frobenius = a.norm();
  const double target = 1e-12 * std::max(frobenius, 1e-300);

  constexpr int kMaxSweeps = 50;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 1e-300) jacobi_rotate(a, v, p, q);
      }
    }
  }
  if (off_diagonal_norm(a) > target)
    throw NumericalError("Jacobi eigensolver did not converge in 50 sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index lhs, Eigen::Index rhs) { return a(lhs, lhs) < a(rhs, rhs); });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    result.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    Vector column = v.col(order[static_cast<std::size_t>(k)]);
    Eigen::Index biggest = 0;
    column.cwiseAbs().maxCoeff(&biggest);
    if (column(biggest) < 0.0) column = -column;
    result.eigenvectors.col(k) = column;
  }
  return result;
}

EigenResult smallest_eigenvectors(const Matrix& a, int k) {
  if (k < 1 || k > a.rows()) throw std::invalid_argument("k out of range");
  EigenResult full = eigen_symmetric(a);
  EigenResult out;
  out.eigenvalues = full.eigenvalues.head(k);
  out.eigenvectors = full.eigenvectors.leftCols(k);
  return out;
}

namespace {

double wcss(const Matrix& rows, const std::vector<int>& assign, const Matrix& centroids) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    total += (rows.row(i) - centroids.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  return total;
}

std::vector<int> lloyd(const Matrix& rows, Matrix& centroids) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index c = centroids.rows();
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < c; ++k) {
        const double dist = (rows.row(i) - centroids.row(k)).squaredNorm();
        if (dist < best_dist) {
          best_dist = dist;
          best = static_cast<int>(k);
        }
      }
      if (assign[static_cast<std::size_t>(i)] != best) {
        assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    centroids.setZero();
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(c), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      centroids.row(assign[static_cast<std::size_t>(i)]) += rows.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (Eigen::Index k = 0; k < c; ++k) {
      if (counts[static_cast<std::size_t>(k)] > 0) {
        centroids.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);
      } else {
        // Re-seed an emptied cluster at the worst-served point.
        Eigen::Index farthest = 0;
        double farthest_dist = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          double nearest = std::numeric_limits<double>::infinity();
          for (Eigen::Index m = 0; m < c; ++m) {
            if (counts[static_cast<std::size_t>(m)] == 0) continue;  // stale centroid
            nearest = std::min(nearest, (rows.row(i) - centroids.row(m)).squaredNorm());
          }
          if (nearest > farthest_dist) {
            farthest_dist = nearest;
            farthest = i;
          }
        }
        centroids.row(k) = rows.row(farthest);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return assign;
}

}  // namespace

Labeling kmeans(const Matrix& rows, int c, std::uint64_t seed, int restarts) {
  const Eigen::Index n = rows.rows();
  if (c < 1 || c > n) throw std::invalid_argument("kmeans: c must be in [1, n]");
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");

  Rng rng(seed);
  std::vector<int> best_assign;
  double best_objective = std::numeric_limits<double>::infinity();

  for (int run = 0; run < restarts; ++run) {
    // k-means++ seeding
    Matrix centroids(c, rows.cols());
    centroids.row(0) = rows.row(static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(n))));
    Vector dist2 = (rows.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int k = 1; k < c; ++k) {
      const double total = dist2.sum();
      Eigen::Index pick = 0;
      if (total > 0.0) {
        double r = rng.uniform() * total;
        for (; pick + 1 < n; ++pick) {
          r -= dist2(pick);
          if (r <= 0.0) break;
        }
      } else {
        // all remaining points coincide with chosen centers; walk forward
        pick = static_cast<Eigen::Index>(k) < n ? k : n - 1;
      }
      centroids.row(k) = rows.row(pick);
      dist2 = dist2.cwiseMin((rows.rowwise() - centroids.row(k)).rowwise().squaredNorm());
    }

    std::vector<int> assign = lloyd(rows, centroids);
    const double objective = wcss(rows, assign, centroids);
    if (objective < best_objective) {
      best_objective = objective;
      best_assign = std::move(assign);
    }
  }

  Labeling out;
  out.num_classes = c;
  out.labels.reserve(best_assign.size());
  for (int a : best_assign) out.labels.push_back(a + 1);
  return out;
}

}  // namespace dsim
