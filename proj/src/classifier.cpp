#include "dsim/classifier.hpp"

#include <cmath>
#include <limits>

namespace dsim {

namespace {

void check_labeling(const Labeling& labels, Eigen::Index n) {
  if (labels.size() != n) throw std::invalid_argument("label count mismatch");
  if (labels.num_classes < 1) throw std::invalid_argument("labeling has no classes");
  for (int id : labels.labels)
    if (id < 1 || id > labels.num_classes)
      throw std::invalid_argument("label id out of range");
}

// n x c matrix of hypothesis values over the training set, built from a
// gram/similarity matrix: column y holds sum_{j: y_j = y+1} a_j M_ij.
Matrix hypothesis_table(const Matrix& m, const Labeling& labels, const Weights& weights) {
  Matrix masked = Matrix::Zero(m.rows(), labels.num_classes);
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    masked(j, labels.labels[static_cast<std::size_t>(j)] - 1) = weights.alpha(j);
  return m * masked;
}

double phi_empirical_from_table(const Matrix& table, const Labeling& labels,
                                double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  double total = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    const double own = table(i, labels.labels[static_cast<std::size_t>(i)] - 1);
    const double rest = table.row(i).sum() - own;
    total += phi_margin_loss((own - rest) / gamma);
  }
  return total / static_cast<double>(table.rows());
}

// 1 - (1/(n gamma)) sum_{i,j} (a_i + a_j)/2 M_ij
//   + (1/(n gamma)) sum_{i<j} 2 (a_i + a_j) M_ij [y_i != y_j]
double similarity_empirical(const Matrix& m, const Labeling& labels,
                            const Weights& weights, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const Eigen::Index n = m.rows();
  const double volume = weights.alpha.dot(m.rowwise().sum());
  double cut = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (labels.labels[static_cast<std::size_t>(i)] != labels.labels[static_cast<std::size_t>(j)])
        cut += 2.0 * (weights.alpha(i) + weights.alpha(j)) * m(i, j);
  const double scale = 1.0 / (static_cast<double>(n) * gamma);
  return 1.0 - scale * volume + scale * cut;
}

double confidence_tail(Eigen::Index n, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  return std::sqrt(std::log(4.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace

KernelClassifier::KernelClassifier(Dataset data_in, Labeling labels_in,
                                   Weights weights_in, Bandwidth bandwidth_in)
    : data(std::move(data_in)),
      labels(std::move(labels_in)),
      weights(std::move(weights_in)),
      bandwidth(bandwidth_in),
      gram(dsim::gram(data, bandwidth)) {
  check_labeling(labels, data.size());
  if (weights.alpha.size() != data.size())
    throw std::invalid_argument("weights size mismatch");
  weights.validate();
}

double phi_margin_loss(double t) {
  if (t < 0.0) return 1.0;
  if (t > 1.0) return 0.0;
  return 1.0 - t;
}

double hypothesis(const KernelClassifier& clf, const Vector& x, int class_id) {
  if (class_id < 1 || class_id > clf.labels.num_classes)
    throw std::invalid_argument("class id out of range");
  double total = 0.0;
  for (Eigen::Index i = 0; i < clf.data.size(); ++i) {
    if (clf.labels.labels[static_cast<std::size_t>(i)] != class_id) continue;
    total += clf.weights.alpha(i) *
             gaussian_kernel(x, clf.data.points.row(i).transpose(), clf.bandwidth);
  }
  return total;
}

int predict(const KernelClassifier& clf, const Vector& x) {
  int best = 1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int y = 1; y <= clf.labels.num_classes; ++y) {
    const double value = hypothesis(clf, x, y);
    if (value > best_value) {
      best_value = value;
      best = y;
    }
  }
  return best;
}

double margin(const KernelClassifier& clf, const Vector& x, int class_id) {
  if (clf.labels.num_classes < 2)
    throw std::invalid_argument("margin needs at least two classes");
  const double own = hypothesis(clf, x, class_id);
  double best_other = -std::numeric_limits<double>::infinity();
  for (int y = 1; y <= clf.labels.num_classes; ++y) {
    if (y == class_id) continue;
    best_other = std::max(best_other, hypothesis(clf, x, y));
  }
  return own - best_other;
}

double empirical_error_phi(const KernelClassifier& clf, double gamma) {
  return phi_empirical_from_table(hypothesis_table(clf.gram.entries, clf.labels, clf.weights),
                                  clf.labels, gamma);
}

double empirical_error_similarity(const KernelClassifier& clf, double gamma) {
  return similarity_empirical(clf.gram.entries, clf.labels, clf.weights, gamma);
}

double rademacher_complexity_bound(double cap_b, int num_classes, Eigen::Index n,
                                   double delta) {
  if (!(cap_b > 0.0) || num_classes < 1 || n < 1)
    throw std::invalid_argument("bad rademacher bound inputs");
  if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  const double c = static_cast<double>(num_classes);
  const double root_n = std::sqrt(static_cast<double>(n));
  return (2.0 * c - 1.0) * c * cap_b / root_n +
         std::sqrt(2.0) * cap_b * c * (2.0 * c - 1.0) *
             std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

BoundBreakdown kernel_error_bound_value(double empirical, double cap_b,
                                        int num_classes, Eigen::Index n,
                                        double gamma, double delta) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const double c = static_cast<double>(num_classes);
  BoundBreakdown out;
  out.empirical = empirical;
  out.complexity = 8.0 * (2.0 * c - 1.0) * c * cap_b /
                   (gamma * std::sqrt(static_cast<double>(n)));
  out.confidence =
      (8.0 * std::sqrt(2.0) * cap_b * c * (2.0 * c - 1.0) / gamma + 1.0) *
      confidence_tail(n, delta);
  out.dominant = out.empirical + out.complexity;
  out.total = out.dominant + out.confidence;
  return out;
}

BoundBreakdown kernel_error_bound(const KernelClassifier& clf, const BoundParams& params) {
  const double regularizer = omega(clf.weights, clf.labels, clf.gram);
  if (regularizer > params.cap_b * params.cap_b * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("omega(alpha) exceeds the cap B^2");
  return kernel_error_bound_value(empirical_error_phi(clf, params.gamma), params.cap_b,
                                  clf.labels.num_classes, clf.data.size(), params.gamma,
                                  params.delta);
}

SimilarityClassifier::SimilarityClassifier(Matrix similarity_in, Labeling labels_in,
                                           Weights weights_in)
    : similarity(std::move(similarity_in)),
      split(decompose_similarity(similarity)),
      labels(std::move(labels_in)),
      weights(std::move(weights_in)) {
  check_labeling(labels, similarity.rows());
  if (weights.alpha.size() != similarity.rows())
    throw std::invalid_argument("weights size mismatch");
  weights.validate();
}

double hypothesis(const SimilarityClassifier& clf, Eigen::Index i, int class_id) {
  if (i < 0 || i >= clf.similarity.rows()) throw std::invalid_argument("index out of range");
  if (class_id < 1 || class_id > clf.labels.num_classes)
    throw std::invalid_argument("class id out of range");
  double total = 0.0;
  for (Eigen::Index j = 0; j < clf.similarity.rows(); ++j)
    if (clf.labels.labels[static_cast<std::size_t>(j)] == class_id)
      total += clf.weights.alpha(j) * clf.similarity(i, j);
  return total;
}

double empirical_error_phi(const SimilarityClassifier& clf, double gamma) {
  return phi_empirical_from_table(hypothesis_table(clf.similarity, clf.labels, clf.weights),
                                  clf.labels, gamma);
}

double empirical_error_similarity(const SimilarityClassifier& clf, double gamma) {
  return similarity_empirical(clf.similarity, clf.labels, clf.weights, gamma);
}

BoundBreakdown similarity_error_bound_value(double empirical, double cap_b_plus,
                                            double cap_b_minus, double similarity_sup,
                                            int num_classes, Eigen::Index n,
                                            double gamma, double delta) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const double c = static_cast<double>(num_classes);
  const double caps = cap_b_plus + cap_b_minus;
  const double r = similarity_sup;
  BoundBreakdown out;
  out.empirical = empirical;
  out.complexity =
      8.0 * r * (2.0 * c - 1.0) * c * caps / (gamma * std::sqrt(static_cast<double>(n)));
  out.confidence =
      (16.0 * c * (2.0 * c - 1.0) * caps * r * r / gamma + 1.0) * confidence_tail(n, delta);
  out.dominant = out.empirical + out.complexity;
  out.total = out.dominant + out.confidence;
  return out;
}

BoundBreakdown similarity_error_bound(const SimilarityClassifier& clf,
                                      const BoundParams& params) {
  const auto [omega_plus, omega_minus] = omega_plus_minus(clf.weights, clf.labels, clf.split);
  if (omega_plus > params.cap_b_plus * params.cap_b_plus * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("omega_plus exceeds the cap");
  if (omega_minus > params.cap_b_minus * params.cap_b_minus * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("omega_minus exceeds the cap");

  // sup_x |S+-(x, x)| over the sample, taken from the split diagonals.
  const double sup_sq = std::max(clf.split.plus.diagonal().cwiseAbs().maxCoeff(),
                                 clf.split.minus.diagonal().cwiseAbs().maxCoeff());
  const double r = std::sqrt(std::max(sup_sq, 0.0));

  const double empirical_phi = empirical_error_phi(clf, params.gamma);
  const double empirical_used =
      params.gamma >= static_cast<double>(clf.labels.num_classes)
          ? empirical_error_similarity(clf, params.gamma)
          : empirical_phi;

  BoundBreakdown out = similarity_error_bound_value(
      empirical_used, params.cap_b_plus, params.cap_b_minus, r,
      clf.labels.num_classes, clf.similarity.rows(), params.gamma, params.delta);
  out.dominant = empirical_phi + out.complexity;
  return out;
}

KdeClassifier::KdeClassifier(Dataset data_in, Labeling labels_in, Weights weights_in,
                             Bandwidth bandwidth_in)
    : data(std::move(data_in)),
      labels(std::move(labels_in)),
      weights(std::move(weights_in)),
      bandwidth(bandwidth_in),
      constants(kde_constants(bandwidth, static_cast<int>(data.dim()))),
      gram(dsim::gram(data, bandwidth)),
      gram_sqrt2(dsim::gram_scaled_sqrt2(data, bandwidth)) {
  check_labeling(labels, data.size());
  if (labels.num_classes != 2)
    throw std::invalid_argument("density classifier is binary only");
  if (weights.alpha.size() != data.size())
    throw std::invalid_argument("weights size mismatch");
  weights.validate();
}

double kde_decision(const KdeClassifier& kde, const Vector& x) {
  double diff = 0.0;
  for (Eigen::Index i = 0; i < kde.data.size(); ++i) {
    const double value =
        kde.weights.alpha(i) *
        gaussian_kernel(x, kde.data.points.row(i).transpose(), kde.bandwidth);
    diff += kde.labels.labels[static_cast<std::size_t>(i)] == 1 ? value : -value;
  }
  return kde.constants.tau0 * diff;
}

double empirical_ise(const KdeClassifier& kde) {
  const Eigen::Index n = kde.data.size();
  const Matrix& k = kde.gram.entries;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (kde.labels.labels[static_cast<std::size_t>(i)] !=
          kde.labels.labels[static_cast<std::size_t>(j)])
        cross += (kde.weights.alpha(i) + kde.weights.alpha(j)) * k(i, j);
  const double full = 2.0 * kde.weights.alpha.dot(k.rowwise().sum());
  return 4.0 * cross - full;
}

double ise_regularizer(const KdeClassifier& kde) {
  const Eigen::Index n = kde.data.size();
  const Matrix& k = kde.gram_sqrt2.entries;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (kde.labels.labels[static_cast<std::size_t>(i)] !=
          kde.labels.labels[static_cast<std::size_t>(j)])
        cross += kde.weights.alpha(i) * kde.weights.alpha(j) * k(i, j);
  return kde.weights.alpha.dot(k * kde.weights.alpha) - 4.0 * cross;
}

double kde_ise_bound(const KdeClassifier& kde, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const Eigen::Index n = kde.data.size();
  if (n < 2) throw std::invalid_argument("ISE bound needs n >= 2");
  return kde.constants.tau0 / static_cast<double>(n) * empirical_ise(kde) +
         kde.constants.tau1 * ise_regularizer(kde) +
         2.0 * kde.constants.tau0 * (1.0 / static_cast<double>(n - 1) + epsilon);
}

double ise_bound_failure_probability(Eigen::Index n, double epsilon) {
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const double dn = static_cast<double>(n);
  return 2.0 * dn * std::exp(-2.0 * (dn - 1.0) * epsilon * epsilon) +
         2.0 * dn * std::exp(-2.0 * dn * epsilon * epsilon);
}

double similarity_machine_bound(std::span<const double> margins, double gamma,
                                double b1, double b2,
                                std::span<const double> diag_plus,
                                std::span<const double> diag_minus, double delta) {
  if (margins.empty()) throw std::invalid_argument("no margins");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const auto diag_sum = [](std::span<const double> diag) {
    double total = 0.0;
    for (double v : diag) {
      if (v < -1e-12) throw std::invalid_argument("negative split diagonal");
      total += std::max(v, 0.0);
    }
    return total;
  };
  const double n = static_cast<double>(margins.size());
  double empirical = 0.0;
  for (double m : margins) {
    if (m <= 0.0)
      empirical += 1.0;
    else if (m < gamma)
      empirical += 1.0 - m / gamma;
  }
  empirical /= n;
  const double capacity =
      4.0 / (n * gamma) * (b1 * std::sqrt(diag_sum(diag_plus)) + b2 * std::sqrt(diag_sum(diag_minus)));
  return empirical + capacity +
         (8.0 / gamma + 1.0) * confidence_tail(margins.size(), delta);
}

}  // namespace dsim
