#pragma once

#include <vector>

#include "dsim/dataset.hpp"
#include "dsim/similarity.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// Similarity graph with its degree vector, Laplacian L = D - S and the
/// symmetrically normalized Laplacian D^{-1/2} L D^{-1/2}. The similarity
/// diagonal is zeroed before degrees are taken; vertices whose degree falls
/// below 1e-12 are listed in `isolated` and their inverse-sqrt degree is
/// clamped to keep the normalization finite.
struct GraphBundle {
  Matrix similarity;
  Vector degree;
  Matrix laplacian;
  Matrix normalized_laplacian;
  std::vector<int> isolated;
};

/// Builds the bundle from a symmetric, entrywise-nonnegative similarity.
/// Throws std::invalid_argument on a negative entry or an all-zero matrix.
GraphBundle build_graph(const SimilarityMatrix& s);

/// sum_{i<j} S_ij [y_i != y_j].
double cut_value(const SimilarityMatrix& s, const Labeling& labels);

/// n x c binary membership matrix, one 1 per row.
Matrix label_indicator(const Labeling& labels);

/// trace(Y' L Y); equals twice the cut value when Y is a label indicator.
double trace_quadratic(const Matrix& y, const Matrix& laplacian);

}  // namespace dsim
