#pragma once

#include <vector>

#include "dsim/dataset.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// Clustering-quality report. `matching[k]` is the truth class that
/// predicted class k+1 was mapped to by the optimal bijection.
struct MetricReport {
  double ac = 0.0;
  double nmi = 0.0;
  Eigen::MatrixXi confusion;  // predicted class x truth class counts
  std::vector<int> matching;
};

/// Maximum-score assignment (Hungarian algorithm) on a square score matrix;
/// returns the column chosen for each row.
std::vector<int> hungarian_max_assignment(const Matrix& score);

/// Permutation-optimal clustering accuracy in [0, 1].
double accuracy(const Labeling& pred, const Labeling& truth);

/// Mutual information normalized by sqrt(H(a) H(b)). When either entropy is
/// zero the value is 1 if the partitions coincide and 0 otherwise.
double nmi(const Labeling& a, const Labeling& b);

MetricReport evaluate_labels(const Labeling& pred, const Labeling& truth);

}  // namespace dsim
