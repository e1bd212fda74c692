#include "dsim/graph.hpp"

#include <cmath>

namespace dsim {

GraphBundle build_graph(const SimilarityMatrix& s) {
  const Eigen::Index n = s.entries.rows();
  if (n != s.entries.cols()) throw std::invalid_argument("similarity must be square");
  if (!s.entries.allFinite()) throw std::invalid_argument("non-finite similarity");
  if ((s.entries - s.entries.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, s.entries.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("similarity is not symmetric");

  GraphBundle out;
  out.similarity = s.entries;
  out.similarity.diagonal().setZero();  // self-loops contribute nothing to cuts
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (out.similarity(i, j) < 0.0)
        throw std::invalid_argument("negative similarity entry at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");

  out.degree = out.similarity.rowwise().sum();
  if (out.degree.maxCoeff() <= 0.0)
    throw std::invalid_argument("all-zero similarity graph");

  out.laplacian = Matrix(out.degree.asDiagonal()) - out.similarity;

  Vector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.degree(i) <= 1e-12) out.isolated.push_back(static_cast<int>(i));
    inv_sqrt(i) = 1.0 / std::sqrt(std::max(out.degree(i), 1e-12));
  }
  out.normalized_laplacian =
      inv_sqrt.asDiagonal() * out.laplacian * inv_sqrt.asDiagonal();
  out.normalized_laplacian =
      0.5 * (out.normalized_laplacian + out.normalized_laplacian.transpose()).eval();
  return out;
}

double cut_value(const SimilarityMatrix& s, const Labeling& labels) {
  const Eigen::Index n = s.entries.rows();
  if (labels.size() != n) throw std::invalid_argument("label count mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (labels.labels[static_cast<std::size_t>(i)] != labels.labels[static_cast<std::size_t>(j)])
        total += s.entries(i, j);
  return total;
}

Matrix label_indicator(const Labeling& labels) {
  if (labels.num_classes < 1) throw std::invalid_argument("labeling has no classes");
  Matrix y = Matrix::Zero(labels.size(), labels.num_classes);
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const int id = labels.labels[static_cast<std::size_t>(i)];
    if (id < 1 || id > labels.num_classes)
      throw std::invalid_argument("label id out of range");
    y(i, id - 1) = 1.0;
  }
  return y;
}

double trace_quadratic(const Matrix& y, const Matrix& laplacian) {
  if (y.rows() != laplacian.rows() || laplacian.rows() != laplacian.cols())
    throw std::invalid_argument("dimension mismatch");
  return (y.transpose() * laplacian * y).trace();
}

}  // namespace dsim
