#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsim/types.hpp"

namespace dsim {

/// Row-major sample matrix: one row per point, one column per feature.
struct Dataset {
  Matrix points;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

/// Dense class assignment, ids in 1..num_classes.
struct Labeling {
  std::vector<int> labels;
  int num_classes = 0;

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels.size()); }
};

/// Semi-supervised split: the first `labeled_count` points of the dataset
/// carry labels, the rest are unlabeled.
struct PartialLabeling {
  int labeled_count = 0;
  std::vector<int> labels;  // length labeled_count, ids in 1..num_classes
  int num_classes = 0;
};

struct LabeledDataset {
  Dataset data;
  Labeling labels;
};

struct CsvData {
  Dataset data;
  std::optional<Labeling> labels;
};

/// Parses a comma-separated file. A header row is auto-detected (first row
/// with any non-numeric cell). When `label_column` is given (0-based), that
/// column is excluded from the features and its values are remapped to dense
/// class ids 1..c in first-appearance order.
CsvData load_csv(const std::string& path,
                 std::optional<int> label_column = std::nullopt);

/// CSV with a label column in which blank cells mark unlabeled points.
/// `labels_or_zero[i]` is the dense class id of row i, or 0 if unlabeled.
struct SslCsvData {
  Dataset data;
  std::vector<int> labels_or_zero;
  int num_classes = 0;
};
SslCsvData load_ssl_csv(const std::string& path, int label_column);

/// Writes features (and the label column, when given) with a header row.
/// Floats are printed with 17 significant digits so a reload round-trips.
void write_csv(const std::string& path, const Dataset& data,
               const Labeling* labels = nullptr);

/// Per-column zero mean, unit variance (population 1/n convention).
/// Zero-variance columns are centered and left unscaled.
Dataset standardize(const Dataset& data);

/// c isotropic Gaussian clusters of n_per_class points each; cluster k is
/// centered at ((k-1)*separation, 0, ..., 0). Deterministic per seed.
LabeledDataset generate_blobs(std::uint64_t seed, int n_per_class, int c,
                              int d, double separation, double sigma);

/// Two interleaved half-circles of n/2 points each with isotropic Gaussian
/// noise. Deterministic per seed; n must be even.
LabeledDataset generate_two_moons(std::uint64_t seed, int n, double noise);

}  // namespace dsim
