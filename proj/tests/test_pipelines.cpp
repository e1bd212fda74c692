#include <cmath>
#include <random>

#include "doctest.h"
#include "dsim/metrics.hpp"
#include "dsim/pipelines.hpp"
#include "test_support.hpp"

using namespace dsim;

namespace {

LabeledDataset reference_blobs() { return generate_blobs(7, 50, 2, 2, 10.0, 1.0); }

}  // namespace

TEST_CASE("cdsk separates two well-spread blobs perfectly") {
  const LabeledDataset blobs = reference_blobs();
  PipelineConfig config;
  config.num_clusters = 2;
  config.lambda = 1.0;
  const CdskResult result = cdsk(blobs.data, config);
  CHECK(accuracy(result.labels, blobs.labels) == doctest::Approx(1.0));
  CHECK(result.iterations >= 1);
  REQUIRE(!result.objective_trace.empty());
  for (std::size_t t = 1; t < result.objective_trace.size(); ++t)
    CHECK(result.objective_trace[t] <=
          result.objective_trace[t - 1] +
              1e-8 * std::max(1.0, std::abs(result.objective_trace[t - 1])));
  CHECK(result.weights.alpha.minCoeff() >= 0.0);
  CHECK(std::abs(result.weights.alpha.sum() - 1.0) <= 1e-12);
}

TEST_CASE("cdsk splits two exact duplicate groups") {
  Dataset data;
  data.points.resize(20, 2);
  for (Eigen::Index i = 0; i < 10; ++i) {
    data.points.row(i) << 0.0, 0.0;
    data.points.row(10 + i) << 100.0, 0.0;
  }
  PipelineConfig config;
  config.num_clusters = 2;
  config.bandwidth = 5.0;  // cross-group similarity underflows to zero
  const CdskResult result = cdsk(data, config);
  for (Eigen::Index i = 1; i < 10; ++i) {
    CHECK(result.labels.labels[static_cast<std::size_t>(i)] == result.labels.labels[0]);
    CHECK(result.labels.labels[static_cast<std::size_t>(10 + i)] == result.labels.labels[10]);
  }
  CHECK(result.labels.labels[0] != result.labels.labels[10]);
}

TEST_CASE("cdsk embedding satisfies the degree orthogonality constraint") {
  const LabeledDataset blobs = generate_blobs(3, 20, 2, 2, 8.0, 1.0);
  PipelineConfig config;
  config.num_clusters = 2;
  const CdskResult result = cdsk(blobs.data, config);
  const GramMatrix k = gram(blobs.data, Bandwidth{result.bandwidth_used});
  const SimilarityMatrix s = discriminative_similarity_ker(result.weights, k, config.lambda);
  const GraphBundle graph = build_graph(s);
  const Matrix ortho = result.embedding.transpose() *
                       Matrix(graph.degree.asDiagonal()) * result.embedding;
  CHECK((ortho - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("cdsk trace is non-increasing on random small datasets") {
  std::mt19937_64 gen(301);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 8 + static_cast<Eigen::Index>(trial % 7);
    const Dataset data = test::random_dataset(gen, n, 2, 2.0);
    PipelineConfig config;
    config.num_clusters = 2 + trial % 2;
    if (static_cast<Eigen::Index>(config.num_clusters) >= n) config.num_clusters = 2;
    const CdskResult result = cdsk(data, config);
    for (std::size_t t = 1; t < result.objective_trace.size(); ++t)
      CHECK(result.objective_trace[t] <=
            result.objective_trace[t - 1] +
                1e-8 * std::max(1.0, std::abs(result.objective_trace[t - 1])));
  }
}

TEST_CASE("cdsk is deterministic end to end") {
  const LabeledDataset blobs = generate_blobs(11, 15, 2, 2, 6.0, 1.0);
  PipelineConfig config;
  config.num_clusters = 2;
  config.kmeans_seed = 5;
  const CdskResult a = cdsk(blobs.data, config);
  const CdskResult b = cdsk(blobs.data, config);
  CHECK(a.labels.labels == b.labels.labels);
  CHECK((a.weights.alpha - b.weights.alpha).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("overlapping blobs give near-chance accuracy") {
  const LabeledDataset blobs = generate_blobs(7, 50, 2, 2, 0.0, 1.0);
  PipelineConfig config;
  config.num_clusters = 2;
  const CdskResult result = cdsk(blobs.data, config);
  const double ac = accuracy(result.labels, blobs.labels);
  CHECK(ac >= 0.5);  // permutation matching can never do worse
  CHECK(ac <= 0.75);
}

TEST_CASE("spectral step attains the sum of the smallest eigenvalues") {
  const LabeledDataset blobs = generate_blobs(19, 12, 2, 2, 5.0, 1.0);
  const GramMatrix k = gram(blobs.data, bandwidth_heuristic(blobs.data));
  const Weights uniform = Weights::uniform(blobs.data.size());
  const SimilarityMatrix s = discriminative_similarity_ker(uniform, k, 0.1);
  const GraphBundle graph = build_graph(s);
  const EigenResult eig = smallest_eigenvectors(graph.normalized_laplacian, 2);
  const double attained =
      (eig.eigenvectors.transpose() * graph.normalized_laplacian * eig.eigenvectors).trace();
  CHECK(attained == doctest::Approx(eig.eigenvalues.sum()).epsilon(1e-8));
}

TEST_CASE("weight subproblem value matches the labeling objective") {
  std::mt19937_64 gen(307);
  const Dataset data = test::random_dataset(gen, 8, 2);
  const GramMatrix k = gram(data, Bandwidth{1.0});
  const Labeling labels = test::random_labeling(gen, 8, 2);
  const double lambda = 0.4;
  const QpProblem problem = weight_subproblem(k, labels, lambda);
  for (int trial = 0; trial < 20; ++trial) {
    const Weights alpha = test::random_simplex(gen, 8);
    const double qp_value =
        alpha.alpha.dot(problem.q * alpha.alpha) + problem.linear.dot(alpha.alpha);
    CHECK(qp_value ==
          doctest::Approx(clustering_objective_masked(alpha, labels, k, lambda))
              .epsilon(1e-10));
  }
}

TEST_CASE("weight step beats the uniform start and the grid oracle") {
  std::mt19937_64 gen(311);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = test::random_dataset(gen, 3, 2);
    const GramMatrix k = gram(data, Bandwidth{1.0});
    Labeling labels = test::random_labeling(gen, 3, 2);
    labels.labels[0] = 1;
    const double lambda = 0.5;
    const QpProblem problem = weight_subproblem(k, labels, lambda);
    const QpSolution solution = solve_simplex_qp(problem);
    const double at_uniform =
        clustering_objective_masked(Weights::uniform(3), labels, k, lambda);
    CHECK(solution.objective <= at_uniform + 1e-12);

    double oracle = std::numeric_limits<double>::infinity();
    const double step = 1e-3;
    for (double t1 = 0.0; t1 <= 1.0 + 1e-15; t1 += step)
      for (double t2 = 0.0; t1 + t2 <= 1.0 + 1e-15; t2 += step) {
        Vector x(3);
        x << t1, t2, 1.0 - t1 - t2;
        oracle = std::min(oracle, x.dot(problem.q * x) + problem.linear.dot(x));
      }
    CHECK(solution.objective <= oracle + 1e-3);
  }
}

TEST_CASE("harmonic propagation solves the 3-node path exactly") {
  // Path 1 - 2 - 3 with unit weights, ends labeled, reordered labeled-first.
  Matrix s(3, 3);
  s << 0.0, 0.0, 1.0,
       0.0, 0.0, 1.0,
       1.0, 1.0, 0.0;
  PartialLabeling given;
  given.labeled_count = 2;
  given.labels = {1, 2};
  given.num_classes = 2;
  double ridge = 0.0;
  const Matrix y_u = harmonic_propagate(SimilarityMatrix{s, SimilarityKind::kKernel},
                                        given, &ridge);
  REQUIRE(y_u.rows() == 1);
  CHECK(std::abs(y_u(0, 0) - 0.5) <= 1e-12);
  CHECK(std::abs(y_u(0, 1) - 0.5) <= 1e-12);
  CHECK(ridge == doctest::Approx(1e-12));

  // the argmax tie goes to the smaller class id downstream
  Eigen::Index best = 0;
  y_u.row(0).maxCoeff(&best);
  CHECK(best == 0);
}

TEST_CASE("harmonic propagation names an unattached vertex") {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 1) = s(1, 0) = 1.0;  // labeled 0 reaches 1
  s(2, 3) = s(3, 2) = 1.0;  // vertices 2 and 3 float free
  PartialLabeling given;
  given.labeled_count = 2;
  given.labels = {1, 2};
  given.num_classes = 2;
  try {
    harmonic_propagate(SimilarityMatrix{s, SimilarityKind::kKernel}, given);
    FAIL("expected a singular-block failure");
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    CHECK(what.find("vertex 2") != std::string::npos);
  }
}

TEST_CASE("lpdsk labels unlabeled duplicates like their labeled twin") {
  Dataset data;
  data.points.resize(5, 2);
  data.points.row(0) << 0.0, 0.0;    // labeled class 1
  data.points.row(1) << 10.0, 10.0;  // labeled class 2
  data.points.row(2) << 0.0, 0.0;
  data.points.row(3) << 0.0, 0.0;
  data.points.row(4) << 0.0, 0.0;
  PartialLabeling given;
  given.labeled_count = 2;
  given.labels = {1, 2};
  given.num_classes = 2;
  PipelineConfig config;
  config.bandwidth = 1.0;
  const LpdskResult result = lpdsk(data, given, config);
  CHECK(result.labels == std::vector<int>{1, 1, 1});
}

TEST_CASE("lpdsk recovers blob labels from two labels per class") {
  const LabeledDataset blobs = reference_blobs();
  // two labeled points per class, the rest blank
  std::vector<Eigen::Index> order;
  for (Eigen::Index i : {0, 1, 50, 51}) order.push_back(i);
  for (Eigen::Index i = 0; i < 100; ++i)
    if (i != 0 && i != 1 && i != 50 && i != 51) order.push_back(i);
  Dataset permuted;
  permuted.points.resize(100, 2);
  std::vector<int> truth_unlabeled;
  for (Eigen::Index i = 0; i < 100; ++i) {
    permuted.points.row(i) = blobs.data.points.row(order[static_cast<std::size_t>(i)]);
    if (i >= 4)
      truth_unlabeled.push_back(
          blobs.labels.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
  }
  PartialLabeling given;
  given.labeled_count = 4;
  given.labels = {1, 1, 2, 2};
  given.num_classes = 2;

  PipelineConfig config;
  config.lambda = 1.0;
  config.bandwidth_mode = BandwidthMode::kVariance;
  const LpdskResult result = lpdsk(permuted, given, config);

  int agree = 0;
  for (std::size_t i = 0; i < truth_unlabeled.size(); ++i)
    if (result.labels[i] == truth_unlabeled[i]) ++agree;
  const double ac = static_cast<double>(agree) / static_cast<double>(truth_unlabeled.size());
  CHECK(ac >= 0.95);

  // harmonic max principle: soft labels stay inside the labeled value range
  CHECK(result.soft_labels.minCoeff() >= -1e-8);
  CHECK(result.soft_labels.maxCoeff() <= 1.0 + 1e-8);
  const Vector row_sums = result.soft_labels.rowwise().sum();
  CHECK((row_sums.array() - 1.0).abs().maxCoeff() <= 1e-8);

  for (std::size_t t = 1; t < result.objective_trace.size(); ++t)
    CHECK(result.objective_trace[t] <=
          result.objective_trace[t - 1] +
              1e-8 * std::max(1.0, std::abs(result.objective_trace[t - 1])));
}

TEST_CASE("lpdsk is equivariant under permuting the class ids") {
  const LabeledDataset blobs = generate_blobs(23, 10, 2, 2, 7.0, 1.0);
  PartialLabeling given;
  given.labeled_count = 4;
  given.labels = {1, 1, 2, 2};
  given.num_classes = 2;
  Dataset arranged;
  arranged.points.resize(20, 2);
  std::vector<Eigen::Index> order = {0, 1, 10, 11};
  for (Eigen::Index i = 0; i < 20; ++i)
    if (i != 0 && i != 1 && i != 10 && i != 11) order.push_back(i);
  for (Eigen::Index i = 0; i < 20; ++i)
    arranged.points.row(i) = blobs.data.points.row(order[static_cast<std::size_t>(i)]);

  PipelineConfig config;
  const LpdskResult base = lpdsk(arranged, given, config);

  PartialLabeling swapped = given;
  for (int& id : swapped.labels) id = 3 - id;
  const LpdskResult mirrored = lpdsk(arranged, swapped, config);

  for (std::size_t i = 0; i < base.labels.size(); ++i)
    CHECK(mirrored.labels[i] == 3 - base.labels[i]);
  CHECK((mirrored.soft_labels.col(0) - base.soft_labels.col(1)).cwiseAbs().maxCoeff() <=
        1e-9);
}

TEST_CASE("cdsk validates the cluster count") {
  const LabeledDataset blobs = generate_blobs(1, 3, 2, 2, 5.0, 1.0);
  PipelineConfig config;
  config.num_clusters = 1;
  CHECK_THROWS_AS(cdsk(blobs.data, config), std::invalid_argument);
  config.num_clusters = 6;  // need n > c
  CHECK_THROWS_AS(cdsk(blobs.data, config), std::invalid_argument);
  config.num_clusters = 2;
  config.lambda = 2.5;  // nonnegativity bound on the similarity
  CHECK_THROWS_AS(cdsk(blobs.data, config), std::invalid_argument);
}

TEST_CASE("lpdsk validates its partial labeling") {
  const LabeledDataset blobs = generate_blobs(29, 5, 2, 2, 6.0, 1.0);
  PipelineConfig config;
  PartialLabeling missing_class;
  missing_class.labeled_count = 2;
  missing_class.labels = {1, 1};
  missing_class.num_classes = 2;
  CHECK_THROWS_AS(lpdsk(blobs.data, missing_class, config), std::invalid_argument);

  PartialLabeling all_labeled;
  all_labeled.labeled_count = 10;
  all_labeled.labels.assign(10, 1);
  all_labeled.num_classes = 2;
  CHECK_THROWS_AS(lpdsk(blobs.data, all_labeled, config), std::invalid_argument);
}

TEST_CASE("lpdsk is deterministic end to end") {
  const LabeledDataset blobs = generate_blobs(31, 8, 2, 2, 6.0, 1.0);
  Dataset arranged;
  arranged.points.resize(16, 2);
  std::vector<Eigen::Index> order = {0, 8};
  for (Eigen::Index i = 0; i < 16; ++i)
    if (i != 0 && i != 8) order.push_back(i);
  for (Eigen::Index i = 0; i < 16; ++i)
    arranged.points.row(i) = blobs.data.points.row(order[static_cast<std::size_t>(i)]);
  PartialLabeling given;
  given.labeled_count = 2;
  given.labels = {1, 2};
  given.num_classes = 2;
  PipelineConfig config;
  const LpdskResult a = lpdsk(arranged, given, config);
  const LpdskResult b = lpdsk(arranged, given, config);
  CHECK(a.labels == b.labels);
  CHECK((a.weights.alpha - b.weights.alpha).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.objective_trace == b.objective_trace);
}
