#include "dsim/pipelines.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "dsim/solvers.hpp"

namespace dsim {

// minimize  lambda a' (K o M) a
//         + sum_i a_i (2 sum_{j != i} K_ij [y_i != y_j] - rowsum_i(K))
// over the simplex, M being the same-class mask.
QpProblem weight_subproblem(const GramMatrix& gram, const Labeling& labels,
                            double lambda) {
  const Eigen::Index n = gram.entries.rows();
  if (labels.size() != n) throw std::invalid_argument("label count mismatch");
  Matrix q = Matrix::Zero(n, n);
  Vector linear(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double cross = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool same =
          labels.labels[static_cast<std::size_t>(i)] == labels.labels[static_cast<std::size_t>(j)];
      if (same) q(i, j) = lambda * gram.entries(i, j);
      else if (j != i) cross += gram.entries(i, j);
    }
    linear(i) = 2.0 * cross - gram.entries.row(i).sum();
  }
  return QpProblem(std::move(q), std::move(linear));
}

namespace {

double pipeline_objective(const Weights& weights, const GramMatrix& gram,
                          double lambda, const Matrix& y,
                          const SimilarityMatrix& s) {
  GraphBundle graph = build_graph(s);
  const double volume = weights.alpha.dot(gram.entries.rowwise().sum());
  const double quadratic = weights.alpha.dot(gram.entries * weights.alpha);
  return trace_quadratic(y, graph.laplacian) - volume + lambda * quadratic;
}

Matrix row_normalized(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 1e-300) out.row(i) /= norm;
  }
  return out;
}

Bandwidth resolve_bandwidth(const Dataset& data, const PipelineConfig& config) {
  if (config.bandwidth) {
    if (!(*config.bandwidth > 0.0))
      throw std::invalid_argument("bandwidth must be > 0");
    return Bandwidth{*config.bandwidth};
  }
  return bandwidth_heuristic(data, config.bandwidth_mode);
}

Matrix partial_indicator(const PartialLabeling& given) {
  Matrix f = Matrix::Zero(given.labeled_count, given.num_classes);
  for (int i = 0; i < given.labeled_count; ++i) {
    const int id = given.labels[static_cast<std::size_t>(i)];
    if (id < 1 || id > given.num_classes)
      throw std::invalid_argument("label id out of range");
    f(i, id - 1) = 1.0;
  }
  return f;
}

// Every unlabeled vertex must reach a labeled one through positive-weight
// edges, otherwise its harmonic value is undetermined.
void check_attachment(const Matrix& similarity, int labeled_count) {
  const Eigen::Index n = similarity.rows();
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::deque<Eigen::Index> frontier;
  for (Eigen::Index i = 0; i < labeled_count; ++i) {
    reached[static_cast<std::size_t>(i)] = true;
    frontier.push_back(i);
  }
  while (!frontier.empty()) {
    const Eigen::Index i = frontier.front();
    frontier.pop_front();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || reached[static_cast<std::size_t>(j)]) continue;
      if (similarity(i, j) > 0.0) {
        reached[static_cast<std::size_t>(j)] = true;
        frontier.push_back(j);
      }
    }
  }
  for (Eigen::Index j = labeled_count; j < n; ++j) {
    if (!reached[static_cast<std::size_t>(j)]) {
      throw NumericalError("unlabeled vertex " + std::to_string(j) +
                           " has no connection to any labeled vertex; the "
                           "unlabeled Laplacian block is singular");
    }
  }
}

void check_partial(const PartialLabeling& given, Eigen::Index n) {
  if (given.labeled_count < 1 || given.labeled_count >= n)
    throw std::invalid_argument("labeled count must be in [1, n)");
  if (static_cast<Eigen::Index>(given.labels.size()) != given.labeled_count)
    throw std::invalid_argument("label vector length mismatch");
  if (given.num_classes < 2) throw std::invalid_argument("need at least two classes");
  std::vector<bool> seen(static_cast<std::size_t>(given.num_classes), false);
  for (int id : given.labels) {
    if (id < 1 || id > given.num_classes)
      throw std::invalid_argument("label id out of range");
    seen[static_cast<std::size_t>(id - 1)] = true;
  }
  for (int y = 0; y < given.num_classes; ++y)
    if (!seen[static_cast<std::size_t>(y)])
      throw std::invalid_argument("class " + std::to_string(y + 1) +
                                  " has no labeled point");
}

}  // namespace

Matrix harmonic_propagate(const SimilarityMatrix& s, const PartialLabeling& given,
                          double* ridge_used) {
  const Eigen::Index n = s.entries.rows();
  check_partial(given, n);
  GraphBundle graph = build_graph(s);
  check_attachment(graph.similarity, given.labeled_count);

  const Eigen::Index l = given.labeled_count;
  const Eigen::Index u = n - l;
  const Matrix f_l = partial_indicator(given);
  const Matrix l_uu = graph.laplacian.bottomRightCorner(u, u);
  const Matrix l_ul = graph.laplacian.bottomLeftCorner(u, l);

  constexpr double kRidge = 1e-12;
  Matrix regularized = l_uu;
  regularized.diagonal().array() += kRidge;
  Eigen::LLT<Matrix> chol(regularized);
  if (chol.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of the unlabeled block failed");
  if (ridge_used) *ridge_used = kRidge;
  return chol.solve(-l_ul * f_l);
}

CdskResult cdsk(const Dataset& data, const CdskConfig& config) {
  const Eigen::Index n = data.size();
  const int c = config.num_clusters;
  if (c < 2) throw std::invalid_argument("need at least two clusters");
  if (n <= c) throw std::invalid_argument("need more points than clusters");

  const Bandwidth h = resolve_bandwidth(data, config);
  const GramMatrix k = gram(data, h);

  CdskResult result;
  result.bandwidth_used = h.value;
  Weights alpha = Weights::uniform(n);
  double current = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < config.max_outer_iters; ++iter) {
    // Embedding step at fixed weights: spectral solution of the relaxed
    // cut problem, mapped back so that Y' D Y = I.
    const SimilarityMatrix s = discriminative_similarity_ker(alpha, k, config.lambda);
    const GraphBundle graph = build_graph(s);
    const EigenResult eig = smallest_eigenvectors(graph.normalized_laplacian, c);
    Matrix embedding = eig.eigenvectors;
    for (Eigen::Index i = 0; i < n; ++i)
      embedding.row(i) /= std::sqrt(std::max(graph.degree(i), 1e-12));

    // Hardening + weight step at the hardened labels.
    const Labeling hard =
        kmeans(row_normalized(embedding), c, config.kmeans_seed, config.kmeans_restarts);
    const QpSolution qp =
        solve_simplex_qp(weight_subproblem(k, hard, config.lambda), config.qp_tol,
                         config.qp_max_iter);

    const SimilarityMatrix s_next =
        discriminative_similarity_ker(qp.weights, k, config.lambda);
    const double objective =
        pipeline_objective(qp.weights, k, config.lambda, embedding, s_next);

    if (!result.objective_trace.empty() && objective > current) {
      // A worse full step means coordinate descent has stalled; keep the
      // previous iterate.
      result.converged = true;
      break;
    }
    alpha = qp.weights;
    result.labels = hard;
    result.embedding = embedding;
    result.objective_trace.push_back(objective);
    result.iterations = iter + 1;
    const double improvement = current - objective;
    if (result.objective_trace.size() > 1 &&
        improvement < config.convergence_rel_tol * std::max(1.0, std::abs(current))) {
      result.converged = true;
      break;
    }
    current = objective;
  }

  result.weights = alpha;
  return result;
}

namespace {

// Fraction of labeled points whose weighted kernel vote under `weights` and
// the hypothetical labeling disagrees with their given label. The relaxed
// objective keeps improving when the weights collapse onto a handful of
// points and the labeling with them, so the given labels are the one anchor
// a degenerate iterate cannot satisfy.
double labeled_misfit(const GramMatrix& gram, const Labeling& full,
                      const Weights& weights, const PartialLabeling& given) {
  int wrong = 0;
  for (int i = 0; i < given.labeled_count; ++i) {
    int best = 1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int y = 1; y <= given.num_classes; ++y) {
      double score = 0.0;
      for (Eigen::Index j = 0; j < gram.entries.rows(); ++j)
        if (full.labels[static_cast<std::size_t>(j)] == y)
          score += weights.alpha(j) * gram.entries(i, j);
      if (score > best_score) {
        best_score = score;
        best = y;
      }
    }
    if (best != given.labels[static_cast<std::size_t>(i)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(given.labeled_count);
}

}  // namespace

LpdskResult lpdsk(const Dataset& data, const PartialLabeling& given,
                  const PipelineConfig& config) {
  const Eigen::Index n = data.size();
  check_partial(given, n);
  const int c = given.num_classes;
  const Eigen::Index l = given.labeled_count;

  const Bandwidth h = resolve_bandwidth(data, config);
  const GramMatrix k = gram(data, h);
  const Matrix f_l = partial_indicator(given);

  LpdskResult result;
  result.bandwidth_used = h.value;
  Weights alpha = Weights::uniform(n);
  double current = std::numeric_limits<double>::infinity();
  double current_misfit = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < config.max_outer_iters; ++iter) {
    const SimilarityMatrix s = discriminative_similarity_ker(alpha, k, config.lambda);
    double ridge = 0.0;
    const Matrix y_u = harmonic_propagate(s, given, &ridge);

    // Harden the unlabeled rows by argmax (ties to the smaller class id).
    Labeling full;
    full.num_classes = c;
    full.labels.assign(static_cast<std::size_t>(n), 1);
    std::vector<int> unlabeled(static_cast<std::size_t>(n - l), 1);
    for (Eigen::Index i = 0; i < l; ++i)
      full.labels[static_cast<std::size_t>(i)] = given.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < n - l; ++i) {
      Eigen::Index best = 0;
      y_u.row(i).maxCoeff(&best);
      unlabeled[static_cast<std::size_t>(i)] = static_cast<int>(best) + 1;
      full.labels[static_cast<std::size_t>(l + i)] = static_cast<int>(best) + 1;
    }

    const QpSolution qp =
        solve_simplex_qp(weight_subproblem(k, full, config.lambda), config.qp_tol,
                         config.qp_max_iter);

    Matrix y_full(n, c);
    y_full.topRows(l) = f_l;
    y_full.bottomRows(n - l) = y_u;
    const SimilarityMatrix s_next =
        discriminative_similarity_ker(qp.weights, k, config.lambda);
    const double objective =
        pipeline_objective(qp.weights, k, config.lambda, y_full, s_next);
    const double misfit = labeled_misfit(k, full, qp.weights, given);
    const double baseline = result.objective_trace.empty()
                                ? labeled_misfit(k, full, alpha, given)
                                : current_misfit;

    // An iterate that raises the objective, or that flips the model's own
    // vote on the given labels, is a degeneration: keep the previous state.
    if (misfit > baseline ||
        (!result.objective_trace.empty() && objective > current)) {
      if (result.objective_trace.empty()) {
        // The very first weight update already broke the anchors; stop at
        // the initialization state (uniform weights, first harmonic pass).
        result.labels = unlabeled;
        result.soft_labels = y_u;
        result.ridge = ridge;
        result.objective_trace.push_back(
            pipeline_objective(alpha, k, config.lambda, y_full, s));
        result.iterations = 1;
      }
      result.converged = true;
      break;
    }
    alpha = qp.weights;
    result.labels = unlabeled;
    result.soft_labels = y_u;
    result.ridge = ridge;
    result.objective_trace.push_back(objective);
    result.iterations = iter + 1;
    const double improvement = current - objective;
    if (result.objective_trace.size() > 1 &&
        improvement < config.convergence_rel_tol * std::max(1.0, std::abs(current))) {
      result.converged = true;
      break;
    }
    current = objective;
    current_misfit = misfit;
  }

  result.weights = alpha;
  return result;
}

}  // namespace dsim
