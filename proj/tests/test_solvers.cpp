#include <cmath>
#include <random>

#include "doctest.h"
#include "dsim/solvers.hpp"
#include "test_support.hpp"

using namespace dsim;

namespace {

// Dense sweep over the 2-simplex (and 3-simplex) used as the nearest-point
// and QP oracles.
double grid_min_objective_2d(const QpProblem& p, double step) {
  double best = std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= 1.0 + 1e-15; t += step) {
    Vector x(2);
    x << t, 1.0 - t;
    best = std::min(best, x.dot(p.q * x) + p.linear.dot(x));
  }
  return best;
}

double grid_min_objective_3d(const QpProblem& p, double step) {
  double best = std::numeric_limits<double>::infinity();
  for (double t1 = 0.0; t1 <= 1.0 + 1e-15; t1 += step) {
    for (double t2 = 0.0; t2 + t1 <= 1.0 + 1e-15; t2 += step) {
      Vector x(3);
      x << t1, t2, 1.0 - t1 - t2;
      best = std::min(best, x.dot(p.q * x) + p.linear.dot(x));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("project_simplex matches the hand-worked anchors") {
  Vector already(3);
  already << 0.2, 0.5, 0.3;
  CHECK((project_simplex(already) - already).cwiseAbs().maxCoeff() <= 1e-15);

  Vector shift(2);
  shift << 0.2, 0.3;
  const Vector projected = project_simplex(shift);
  CHECK(projected(0) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(projected(1) == doctest::Approx(0.55).epsilon(1e-12));

  Vector corner(2);
  corner << 2.0, 0.0;
  const Vector clipped = project_simplex(corner);
  CHECK(clipped(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clipped(1) == 0.0);
}

TEST_CASE("project_simplex output is feasible and nearest on a grid") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 2);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(gen);
    const Vector p = project_simplex(v);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
    const double dist = (p - v).squaredNorm();
    const double step = 1e-3;
    if (n == 2) {
      for (double t = 0.0; t <= 1.0 + 1e-15; t += step) {
        Vector x(2);
        x << t, 1.0 - t;
        CHECK(dist <= (x - v).squaredNorm() + 1e-9);
      }
    } else {
      for (double t1 = 0.0; t1 <= 1.0 + 1e-15; t1 += 5 * step) {
        for (double t2 = 0.0; t1 + t2 <= 1.0 + 1e-15; t2 += 5 * step) {
          Vector x(3);
          x << t1, t2, 1.0 - t1 - t2;
          CHECK(dist <= (x - v).squaredNorm() + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("simplex QP solves the symmetric and diagonal anchors") {
  const QpSolution symmetric =
      solve_simplex_qp(QpProblem(Matrix::Identity(2, 2), Vector::Zero(2)));
  CHECK(symmetric.weights.alpha(0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(symmetric.converged);

  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 100.0;
  const QpSolution skewed = solve_simplex_qp(QpProblem(q, Vector::Zero(2)));
  CHECK(std::abs(skewed.weights.alpha(0) - 100.0 / 101.0) <= 1e-4);
  CHECK(std::abs(skewed.weights.alpha(1) - 1.0 / 101.0) <= 1e-4);
}

TEST_CASE("simplex QP matches the dense grid oracle") {
  std::mt19937_64 gen(33);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    for (Eigen::Index n : {2, 3}) {
      Matrix root(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) root(i, j) = normal(gen);
      Vector linear(n);
      for (Eigen::Index i = 0; i < n; ++i) linear(i) = normal(gen);
      const QpProblem problem(root.transpose() * root, linear);
      const QpSolution solution = solve_simplex_qp(problem);
      CHECK(solution.kkt_residual <= 1e-6);
      const double oracle = n == 2 ? grid_min_objective_2d(problem, 1e-3)
                                   : grid_min_objective_3d(problem, 1e-3);
      CHECK(solution.objective <= oracle + 1e-3);
      CHECK(solution.weights.alpha.minCoeff() >= 0.0);
      CHECK(std::abs(solution.weights.alpha.sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("simplex QP rejects a non-finite objective") {
  Matrix q(1, 1);
  q << std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve_simplex_qp(QpProblem(q, Vector::Zero(1))), NumericalError);
}

TEST_CASE("eigen solver handles diagonal and 2x2 anchors") {
  Matrix diag = Matrix::Zero(3, 3);
  diag.diagonal() << 3.0, 1.0, 2.0;
  const EigenResult lowest = smallest_eigenvectors(diag, 1);
  CHECK(lowest.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lowest.eigenvectors(1, 0) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  const EigenResult pair = eigen_symmetric(flip);
  CHECK(pair.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pair.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(pair.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK(pair.eigenvectors(1, 0) == doctest::Approx(-inv_sqrt2).epsilon(1e-10));
  CHECK(pair.eigenvectors(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK(pair.eigenvectors(1, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
}

TEST_CASE("eigen solver satisfies residual and orthonormality invariants") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 7);
    const Matrix a = test::random_symmetric(gen, n, 2.0);
    const EigenResult eig = eigen_symmetric(a);
    const double scale = a.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k) {
      const Vector residual = a * eig.eigenvectors.col(k) -
                              eig.eigenvalues(k) * eig.eigenvectors.col(k);
      CHECK(residual.cwiseAbs().maxCoeff() <= 1e-8 * std::max(scale, 1.0));
    }
    const Matrix gram = eig.eigenvectors.transpose() * eig.eigenvectors;
    CHECK((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8);
    const Matrix rebuilt = eig.eigenvectors * eig.eigenvalues.asDiagonal() *
                           eig.eigenvectors.transpose();
    CHECK((rebuilt - a).norm() <= 1e-8 * std::max(a.norm(), 1.0));
    for (Eigen::Index k = 1; k < n; ++k) CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
  }
}

TEST_CASE("eigenvalues match the characteristic polynomial for 2x2 and 3x3") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = test::random_symmetric(gen, 2, 1.5);
    const EigenResult eig = eigen_symmetric(a);
    const double mid = 0.5 * (a(0, 0) + a(1, 1));
    const double radius =
        std::sqrt(0.25 * (a(0, 0) - a(1, 1)) * (a(0, 0) - a(1, 1)) + a(0, 1) * a(0, 1));
    CHECK(eig.eigenvalues(0) == doctest::Approx(mid - radius).epsilon(1e-8));
    CHECK(eig.eigenvalues(1) == doctest::Approx(mid + radius).epsilon(1e-8));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = test::random_symmetric(gen, 3, 1.5);
    const EigenResult eig = eigen_symmetric(a);
    for (Eigen::Index k = 0; k < 3; ++k) {
      const double lambda = eig.eigenvalues(k);
      const double det = (a - lambda * Matrix::Identity(3, 3)).determinant();
      CHECK(std::abs(det) <= 1e-8 * std::max(1.0, std::pow(a.norm(), 3)));
    }
  }
}

TEST_CASE("kmeans recovers well-separated blob labels up to permutation") {
  std::mt19937_64 gen(6);
  Matrix rows(40, 2);
  for (Eigen::Index i = 0; i < 20; ++i) {
    rows(i, 0) = 0.1 * static_cast<double>(i % 5);
    rows(i, 1) = 0.0;
    rows(20 + i, 0) = 50.0 + 0.1 * static_cast<double>(i % 5);
    rows(20 + i, 1) = 0.0;
  }
  const Labeling labels = kmeans(rows, 2, 4, 4);
  for (Eigen::Index i = 1; i < 20; ++i) {
    CHECK(labels.labels[static_cast<std::size_t>(i)] == labels.labels[0]);
    CHECK(labels.labels[static_cast<std::size_t>(20 + i)] == labels.labels[20]);
  }
  CHECK(labels.labels[0] != labels.labels[20]);
}

TEST_CASE("kmeans with c = n isolates every distinct point") {
  Matrix rows(4, 1);
  rows << 0.0, 1.0, 2.0, 3.0;
  const Labeling labels = kmeans(rows, 4, 0, 2);
  std::vector<bool> seen(4, false);
  for (int label : labels.labels) {
    CHECK(!seen[static_cast<std::size_t>(label - 1)]);
    seen[static_cast<std::size_t>(label - 1)] = true;
  }
}

TEST_CASE("kmeans sends duplicated rows to the same cluster") {
  Matrix rows(6, 1);
  rows << 0.0, 0.0, 0.0, 9.0, 9.0, 9.0;
  const Labeling labels = kmeans(rows, 2, 1, 3);
  CHECK(labels.labels[0] == labels.labels[1]);
  CHECK(labels.labels[1] == labels.labels[2]);
  CHECK(labels.labels[3] == labels.labels[4]);
  CHECK(labels.labels[0] != labels.labels[3]);
}

TEST_CASE("kmeans is deterministic per seed") {
  std::mt19937_64 gen(15);
  const Matrix rows = test::random_dataset(gen, 30, 3).points;
  const Labeling a = kmeans(rows, 3, 42, 5);
  const Labeling b = kmeans(rows, 3, 42, 5);
  CHECK(a.labels == b.labels);
}
