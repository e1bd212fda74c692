#include "dsim/similarity.hpp"

#include <cmath>

#include "dsim/solvers.hpp"

namespace dsim {

namespace {

void check_sizes(const Weights& weights, const Labeling& labels, Eigen::Index n) {
  if (weights.alpha.size() != n || labels.size() != n)
    throw std::invalid_argument("weights/labels/matrix sizes disagree");
}

}  // namespace

Weights Weights::uniform(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("weights need at least one entry");
  return Weights{Vector::Constant(n, 1.0 / static_cast<double>(n))};
}

void Weights::validate() const {
  if (alpha.size() == 0) throw std::invalid_argument("empty weights");
  if (!alpha.allFinite()) throw std::invalid_argument("non-finite weights");
  if (alpha.minCoeff() < 0.0) throw std::invalid_argument("negative weight");
  if (std::abs(alpha.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");
}

Vector class_masked_weights(const Weights& weights, const Labeling& labels,
                            int class_id) {
  check_sizes(weights, labels, weights.alpha.size());
  if (class_id < 1 || class_id > labels.num_classes)
    throw std::invalid_argument("class id out of range");
  Vector out = Vector::Zero(weights.alpha.size());
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (labels.labels[static_cast<std::size_t>(i)] == class_id) out(i) = weights.alpha(i);
  return out;
}

double omega(const Weights& weights, const Labeling& labels, const GramMatrix& gram) {
  check_sizes(weights, labels, gram.entries.rows());
  double total = 0.0;
  for (int y = 1; y <= labels.num_classes; ++y) {
    const Vector masked = class_masked_weights(weights, labels, y);
    total += masked.dot(gram.entries * masked);
  }
  return total;
}

SimilarityMatrix discriminative_similarity_ker(const Weights& weights,
                                               const GramMatrix& gram,
                                               double lambda,
                                               bool allow_large_lambda) {
  if (lambda > 2.0 && !allow_large_lambda)
    throw std::invalid_argument(
        "lambda > 2 can make the similarity negative; pass allow_large_lambda to override");
  const Eigen::Index n = gram.entries.rows();
  if (weights.alpha.size() != n) throw std::invalid_argument("weights size mismatch");
  SimilarityMatrix out;
  out.kind = SimilarityKind::kKernel;
  out.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double ai = weights.alpha(i);
      const double aj = weights.alpha(j);
      const double value = 2.0 * (ai + aj - lambda * ai * aj) * gram.entries(i, j);
      out.entries(i, j) = value;
      out.entries(j, i) = value;
    }
  }
  return out;
}

SimilarityMatrix discriminative_similarity_ise(const Weights& weights,
                                               const GramMatrix& gram,
                                               double lambda1) {
  if (lambda1 < 0.0) throw std::invalid_argument("lambda1 must be >= 0");
  SimilarityMatrix out =
      discriminative_similarity_ker(weights, gram, lambda1, /*allow_large_lambda=*/true);
  out.entries *= 2.0;
  out.kind = SimilarityKind::kIse;
  return out;
}

KernelSplit decompose_similarity(const Matrix& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("matrix must be square");
  if (!s.allFinite()) throw std::invalid_argument("non-finite entries");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, s.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("matrix is not symmetric");
  const Matrix symmetric = 0.5 * (s + s.transpose());

  const EigenResult eig = eigen_symmetric(symmetric);
  const double spectral_norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double noise_floor = 1e-10 * spectral_norm;

  // Eigenvalues within the noise floor of zero keep their signed value but
  // are assigned to the plus part, so roundoff never creates minus mass.
  const Eigen::Index n = symmetric.rows();
  Vector plus = Vector::Zero(n);
  Vector minus = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double value = eig.eigenvalues(k);
    if (value >= 0.0 || std::abs(value) <= noise_floor) {
      plus(k) = value;
    } else {
      minus(k) = -value;
    }
  }
  KernelSplit out;
  out.plus = eig.eigenvectors * plus.asDiagonal() * eig.eigenvectors.transpose();
  out.minus = eig.eigenvectors * minus.asDiagonal() * eig.eigenvectors.transpose();
  out.plus = 0.5 * (out.plus + out.plus.transpose()).eval();
  out.minus = 0.5 * (out.minus + out.minus.transpose()).eval();
  return out;
}

SimilarityMatrix discriminative_similarity_sim(const Weights& weights,
                                               const Matrix& s,
                                               const KernelSplit& split,
                                               double lambda) {
  const Eigen::Index n = s.rows();
  if (weights.alpha.size() != n) throw std::invalid_argument("weights size mismatch");
  if (split.plus.rows() != n || split.minus.rows() != n)
    throw std::invalid_argument("split size mismatch");
  if (((split.plus - split.minus) - s).cwiseAbs().maxCoeff() >
      1e-8 * std::max(1.0, s.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("split does not reconstruct the similarity");

  SimilarityMatrix out;
  out.kind = SimilarityKind::kGeneral;
  out.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double ai = weights.alpha(i);
      const double aj = weights.alpha(j);
      const double value = 2.0 * (ai + aj) * s(i, j) -
                           2.0 * lambda * ai * aj * (split.plus(i, j) + split.minus(i, j));
      out.entries(i, j) = value;
      out.entries(j, i) = value;
    }
  }
  return out;
}

std::pair<double, double> omega_plus_minus(const Weights& weights,
                                           const Labeling& labels,
                                           const KernelSplit& split) {
  check_sizes(weights, labels, split.plus.rows());
  double plus = 0.0;
  double minus = 0.0;
  for (int y = 1; y <= labels.num_classes; ++y) {
    const Vector masked = class_masked_weights(weights, labels, y);
    plus += masked.dot(split.plus * masked);
    minus += masked.dot(split.minus * masked);
  }
  return {plus, minus};
}

namespace {

// Shared tail of both objective forms:
// - sum_{i,j} (a_i + a_j)/2 K_ij, which by symmetry is sum_i a_i rowsum_i(K).
double volume_term(const Weights& weights, const GramMatrix& gram) {
  return weights.alpha.dot(gram.entries.rowwise().sum());
}

}  // namespace

double clustering_objective_masked(const Weights& weights, const Labeling& labels,
                                   const GramMatrix& gram, double lambda) {
  check_sizes(weights, labels, gram.entries.rows());
  const Eigen::Index n = gram.entries.rows();
  double cut = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (labels.labels[static_cast<std::size_t>(i)] != labels.labels[static_cast<std::size_t>(j)])
        cut += 2.0 * (weights.alpha(i) + weights.alpha(j)) * gram.entries(i, j);
  return cut - volume_term(weights, gram) + lambda * omega(weights, labels, gram);
}

double clustering_objective_similarity(const Weights& weights, const Labeling& labels,
                                       const GramMatrix& gram, double lambda) {
  check_sizes(weights, labels, gram.entries.rows());
  const SimilarityMatrix s =
      discriminative_similarity_ker(weights, gram, lambda, /*allow_large_lambda=*/true);
  const Eigen::Index n = gram.entries.rows();
  double cut = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (labels.labels[static_cast<std::size_t>(i)] != labels.labels[static_cast<std::size_t>(j)])
        cut += s.entries(i, j);
  const double quadratic = weights.alpha.dot(gram.entries * weights.alpha);
  return cut - volume_term(weights, gram) + lambda * quadratic;
}

}  // namespace dsim
