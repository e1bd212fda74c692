#include "dsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^3) potentials form of the Hungarian algorithm, minimizing.
std::vector<int> hungarian_min(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (match[j]) row_to_col[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  return row_to_col;
}

void check_pair(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
  if (a.size() == 0) throw std::invalid_argument("empty labelings");
}

Eigen::MatrixXi confusion_counts(const Labeling& pred, const Labeling& truth) {
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(pred.num_classes, truth.num_classes);
  for (Eigen::Index i = 0; i < pred.size(); ++i)
    counts(pred.labels[static_cast<std::size_t>(i)] - 1,
           truth.labels[static_cast<std::size_t>(i)] - 1) += 1;
  return counts;
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    const double p = c / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

std::vector<int> hungarian_max_assignment(const Matrix& score) {
  if (score.rows() != score.cols()) throw std::invalid_argument("score must be square");
  if (score.size() == 0) throw std::invalid_argument("empty score matrix");
  const double top = score.maxCoeff();
  return hungarian_min(Matrix::Constant(score.rows(), score.cols(), top) - score);
}

MetricReport evaluate_labels(const Labeling& pred, const Labeling& truth) {
  check_pair(pred, truth);
  MetricReport report;
  report.confusion = confusion_counts(pred, truth);

  // Pad to square so every predicted class receives some truth column.
  const int side = std::max(pred.num_classes, truth.num_classes);
  Matrix score = Matrix::Zero(side, side);
  score.topLeftCorner(pred.num_classes, truth.num_classes) =
      report.confusion.cast<double>();
  const std::vector<int> assignment = hungarian_max_assignment(score);

  double matched = 0.0;
  report.matching.assign(static_cast<std::size_t>(pred.num_classes), 0);
  for (int k = 0; k < pred.num_classes; ++k) {
    const int col = assignment[static_cast<std::size_t>(k)];
    if (col < truth.num_classes) {
      report.matching[static_cast<std::size_t>(k)] = col + 1;
      matched += report.confusion(k, col);
    }
  }
  report.ac = matched / static_cast<double>(pred.size());
  report.nmi = nmi(pred, truth);
  return report;
}

double accuracy(const Labeling& pred, const Labeling& truth) {
  return evaluate_labels(pred, truth).ac;
}

double nmi(const Labeling& a, const Labeling& b) {
  check_pair(a, b);
  const double n = static_cast<double>(a.size());
  Eigen::MatrixXi joint = Eigen::MatrixXi::Zero(a.num_classes, b.num_classes);
  std::vector<double> count_a(static_cast<std::size_t>(a.num_classes), 0.0);
  std::vector<double> count_b(static_cast<std::size_t>(b.num_classes), 0.0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const int ia = a.labels[static_cast<std::size_t>(i)] - 1;
    const int ib = b.labels[static_cast<std::size_t>(i)] - 1;
    joint(ia, ib) += 1;
    count_a[static_cast<std::size_t>(ia)] += 1.0;
    count_b[static_cast<std::size_t>(ib)] += 1.0;
  }
  const double ha = entropy(count_a, n);
  const double hb = entropy(count_b, n);
  if (ha <= 0.0 || hb <= 0.0) {
    // A one-block partition matches another partition only if it is also
    // one block.
    return (ha <= 0.0 && hb <= 0.0) ? 1.0 : 0.0;
  }
  double mi = 0.0;
  for (int i = 0; i < a.num_classes; ++i) {
    for (int j = 0; j < b.num_classes; ++j) {
      const double nij = joint(i, j);
      if (nij <= 0.0) continue;
      mi += (nij / n) *
            std::log(nij * n / (count_a[static_cast<std::size_t>(i)] *
                                count_b[static_cast<std::size_t>(j)]));
    }
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace dsim
