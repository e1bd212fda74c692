#pragma once

#include <utility>

#include "dsim/dataset.hpp"
#include "dsim/kernel.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// Classifier weights on the probability simplex: alpha >= 0, sum = 1.
struct Weights {
  Vector alpha;

  static Weights uniform(Eigen::Index n);
  /// Throws std::invalid_argument if any entry is negative or the sum
  /// deviates from 1 by more than 1e-12.
  void validate() const;
};

enum class SimilarityKind { kKernel, kIse, kGeneral };

/// Symmetric pairwise similarity; for kKernel with lambda <= 2 all entries
/// are nonnegative.
struct SimilarityMatrix {
  Matrix entries;
  SimilarityKind kind = SimilarityKind::kKernel;
};

/// Spectral split S = plus - minus with both parts positive semi-definite.
struct KernelSplit {
  Matrix plus;
  Matrix minus;
};

/// alpha with entries outside class y zeroed.
Vector class_masked_weights(const Weights& weights, const Labeling& labels,
                            int class_id);

/// Class-masked quadratic regularizer sum_y a^(y)' K a^(y).
double omega(const Weights& weights, const Labeling& labels,
             const GramMatrix& gram);

/// S_ij = 2 (a_i + a_j - lambda a_i a_j) K_ij. Entries are nonnegative for
/// simplex weights whenever lambda <= 2; larger lambda is rejected unless
/// allow_large_lambda is set.
SimilarityMatrix discriminative_similarity_ker(const Weights& weights,
                                               const GramMatrix& gram,
                                               double lambda,
                                               bool allow_large_lambda = false);

/// S_ij = 4 (a_i + a_j - lambda1 a_i a_j) K_ij, the density-classification
/// counterpart of discriminative_similarity_ker.
SimilarityMatrix discriminative_similarity_ise(const Weights& weights,
                                               const GramMatrix& gram,
                                               double lambda1);

/// Splits a symmetric matrix into PSD parts by eigenvalue sign. Eigenvalues
/// with |value| <= 1e-10 * max|eigenvalue| count as nonnegative so roundoff
/// cannot leak mass into the minus part.
KernelSplit decompose_similarity(const Matrix& s);

/// S_ij = 2 (a_i + a_j) S_ij - 2 lambda a_i a_j (S+_ij + S-_ij); reduces to
/// discriminative_similarity_ker when S is PSD (minus part zero).
SimilarityMatrix discriminative_similarity_sim(const Weights& weights,
                                               const Matrix& s,
                                               const KernelSplit& split,
                                               double lambda);

/// Class-masked quadratic forms on the split: (omega_plus, omega_minus).
std::pair<double, double> omega_plus_minus(const Weights& weights,
                                           const Labeling& labels,
                                           const KernelSplit& split);

/// Labeling-selection objective in regularizer form:
///   sum_{i<j} 2 (a_i + a_j) K_ij [y_i != y_j]
///   - sum_{i,j} (a_i + a_j)/2 K_ij + lambda * omega(alpha).
double clustering_objective_masked(const Weights& weights,
                                   const Labeling& labels,
                                   const GramMatrix& gram, double lambda);

/// The same objective with the regularizer's cross-class part folded into
/// the similarity:
///   sum_{i<j} S^ker_ij [y_i != y_j]
///   - sum_{i,j} (a_i + a_j)/2 K_ij + lambda * alpha' K alpha.
/// Agrees with clustering_objective_masked identically.
double clustering_objective_similarity(const Weights& weights,
                                       const Labeling& labels,
                                       const GramMatrix& gram, double lambda);

}  // namespace dsim
