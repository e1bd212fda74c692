#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsim/classifier.hpp"
#include "dsim/dataset.hpp"
#include "dsim/graph.hpp"
#include "dsim/kernel.hpp"
#include "dsim/metrics.hpp"
#include "dsim/pipelines.hpp"
#include "dsim/similarity.hpp"
#include "dsim/solvers.hpp"

namespace py = pybind11;
using namespace dsim;

namespace {

Labeling labeling_from(const std::vector<int>& labels, int num_classes) {
  int top = 0;
  for (int id : labels) top = std::max(top, id);
  return Labeling{labels, num_classes > 0 ? num_classes : top};
}

Weights weights_from(const Vector& alpha) {
  Weights w{alpha};
  w.validate();
  return w;
}

}  // namespace

PYBIND11_MODULE(_dsim, m) {
  m.doc() = "discriminative-similarity clustering and semi-supervised learning";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  // datasets and generators
  m.def(
      "generate_blobs",
      [](std::uint64_t seed, int n_per_class, int c, int d, double separation,
         double sigma) {
        const LabeledDataset out = generate_blobs(seed, n_per_class, c, d, separation, sigma);
        return py::make_tuple(out.data.points, out.labels.labels);
      },
      py::arg("seed"), py::arg("n_per_class"), py::arg("c"), py::arg("d"),
      py::arg("separation"), py::arg("sigma"));
  m.def(
      "generate_two_moons",
      [](std::uint64_t seed, int n, double noise) {
        const LabeledDataset out = generate_two_moons(seed, n, noise);
        return py::make_tuple(out.data.points, out.labels.labels);
      },
      py::arg("seed"), py::arg("n"), py::arg("noise"));
  m.def(
      "standardize", [](const Matrix& points) { return standardize(Dataset{points}).points; },
      py::arg("points"));

  // kernel machinery
  m.def(
      "gram",
      [](const Matrix& points, double bandwidth) {
        return gram(Dataset{points}, Bandwidth{bandwidth}).entries;
      },
      py::arg("points"), py::arg("bandwidth"));
  m.def(
      "gram_sqrt2",
      [](const Matrix& points, double bandwidth) {
        return gram_scaled_sqrt2(Dataset{points}, Bandwidth{bandwidth}).entries;
      },
      py::arg("points"), py::arg("bandwidth"));
  m.def(
      "bandwidth_heuristic",
      [](const Matrix& points, const std::string& mode) {
        BandwidthMode parsed = BandwidthMode::kMedian;
        if (mode == "mean-dist") parsed = BandwidthMode::kMeanDistance;
        else if (mode == "variance") parsed = BandwidthMode::kVariance;
        else if (mode != "median") throw std::invalid_argument("unknown mode: " + mode);
        return bandwidth_heuristic(Dataset{points}, parsed).value;
      },
      py::arg("points"), py::arg("mode") = "median");

  // discriminative similarities and the PSD split
  m.def(
      "discriminative_similarity",
      [](const Vector& alpha, const Matrix& gram_entries, double bandwidth, double lambda) {
        return discriminative_similarity_ker(weights_from(alpha),
                                             GramMatrix{gram_entries, bandwidth}, lambda)
            .entries;
      },
      py::arg("alpha"), py::arg("gram"), py::arg("bandwidth"), py::arg("lambda_"));
  m.def(
      "omega",
      [](const Vector& alpha, const std::vector<int>& labels, int c,
         const Matrix& gram_entries, double bandwidth) {
        return omega(weights_from(alpha), labeling_from(labels, c),
                     GramMatrix{gram_entries, bandwidth});
      },
      py::arg("alpha"), py::arg("labels"), py::arg("c"), py::arg("gram"),
      py::arg("bandwidth"));
  m.def(
      "decompose_similarity",
      [](const Matrix& s) {
        const KernelSplit split = decompose_similarity(s);
        return py::make_tuple(split.plus, split.minus);
      },
      py::arg("s"));

  // solvers
  m.def("project_simplex", &project_simplex, py::arg("v"));
  m.def(
      "solve_simplex_qp",
      [](const Matrix& q, const Vector& linear, double tol, int max_iter) {
        const QpSolution sol = solve_simplex_qp(QpProblem(q, linear), tol, max_iter);
        py::dict out;
        out["alpha"] = sol.weights.alpha;
        out["objective"] = sol.objective;
        out["kkt_residual"] = sol.kkt_residual;
        out["iterations"] = sol.iterations;
        out["converged"] = sol.converged;
        return out;
      },
      py::arg("q"), py::arg("linear"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10000);
  m.def(
      "eigen_symmetric",
      [](const Matrix& a) {
        const EigenResult eig = eigen_symmetric(a);
        return py::make_tuple(eig.eigenvalues, eig.eigenvectors);
      },
      py::arg("a"));
  m.def(
      "kmeans",
      [](const Matrix& rows, int c, std::uint64_t seed, int restarts) {
        return kmeans(rows, c, seed, restarts).labels;
      },
      py::arg("rows"), py::arg("c"), py::arg("seed") = 0, py::arg("restarts") = 1);

  // metrics
  m.def(
      "accuracy",
      [](const std::vector<int>& pred, const std::vector<int>& truth) {
        return accuracy(labeling_from(pred, 0), labeling_from(truth, 0));
      },
      py::arg("pred"), py::arg("truth"));
  m.def(
      "nmi",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        return nmi(labeling_from(a, 0), labeling_from(b, 0));
      },
      py::arg("a"), py::arg("b"));

  // bound evaluators
  m.def(
      "classifier_diagnostics",
      [](const Matrix& points, const std::vector<int>& labels, int c, const Vector& alpha,
         double bandwidth, double gamma, double delta, double epsilon) {
        const Dataset data{points};
        const Labeling labeling = labeling_from(labels, c);
        const Weights weights = weights_from(alpha);
        const KernelClassifier clf(data, labeling, weights, Bandwidth{bandwidth});
        const double omega_value = omega(weights, labeling, clf.gram);
        BoundParams params;
        params.gamma = gamma > 0.0 ? gamma : static_cast<double>(labeling.num_classes - 1);
        params.delta = delta;
        params.epsilon = epsilon;
        params.cap_b = std::sqrt(std::max(omega_value, 0.0));
        const BoundBreakdown bound = kernel_error_bound(clf, params);
        py::dict out;
        out["omega"] = omega_value;
        out["empirical_error_phi"] = bound.empirical;
        out["empirical_error_similarity"] = empirical_error_similarity(clf, params.gamma);
        out["rademacher_bound"] = rademacher_complexity_bound(
            std::max(params.cap_b, 1e-300), labeling.num_classes, data.size(), delta);
        out["error_bound"] = bound.total;
        out["error_bound_dominant"] = bound.dominant;
        if (labeling.num_classes == 2) {
          const KdeClassifier kde(data, labeling, weights, Bandwidth{bandwidth});
          out["hat_ise"] = empirical_ise(kde);
          out["k_alpha"] = ise_regularizer(kde);
          out["ise_bound"] = kde_ise_bound(kde, epsilon);
          out["ise_failure_probability"] =
              ise_bound_failure_probability(data.size(), epsilon);
        }
        return out;
      },
      py::arg("points"), py::arg("labels"), py::arg("c"), py::arg("alpha"),
      py::arg("bandwidth"), py::arg("gamma") = 0.0, py::arg("delta") = 0.1,
      py::arg("epsilon") = 0.1);

  // pipelines
  m.def(
      "cdsk",
      [](const Matrix& points, int c, double lambda, double bandwidth,
         const std::string& bandwidth_mode, int max_iters, std::uint64_t seed,
         int restarts) {
        PipelineConfig config;
        config.num_clusters = c;
        config.lambda = lambda;
        if (bandwidth > 0.0) config.bandwidth = bandwidth;
        if (bandwidth_mode == "mean-dist") config.bandwidth_mode = BandwidthMode::kMeanDistance;
        else if (bandwidth_mode == "variance") config.bandwidth_mode = BandwidthMode::kVariance;
        config.max_outer_iters = max_iters;
        config.kmeans_seed = seed;
        config.kmeans_restarts = restarts;
        const CdskResult result = cdsk(Dataset{points}, config);
        py::dict out;
        out["labels"] = result.labels.labels;
        out["alpha"] = result.weights.alpha;
        out["embedding"] = result.embedding;
        out["objective_trace"] = result.objective_trace;
        out["converged"] = result.converged;
        out["iterations"] = result.iterations;
        out["bandwidth"] = result.bandwidth_used;
        return out;
      },
      py::arg("points"), py::arg("c"), py::arg("lambda_") = 0.1, py::arg("bandwidth") = 0.0,
      py::arg("bandwidth_mode") = "median", py::arg("max_iters") = 30, py::arg("seed") = 0,
      py::arg("restarts") = 8);
  m.def(
      "lpdsk",
      [](const Matrix& points, const std::vector<int>& labeled, int c, double lambda,
         double bandwidth, const std::string& bandwidth_mode, int max_iters) {
        PartialLabeling given;
        given.labeled_count = static_cast<int>(labeled.size());
        given.labels = labeled;
        given.num_classes = c;
        PipelineConfig config;
        config.lambda = lambda;
        if (bandwidth > 0.0) config.bandwidth = bandwidth;
        if (bandwidth_mode == "mean-dist") config.bandwidth_mode = BandwidthMode::kMeanDistance;
        else if (bandwidth_mode == "variance") config.bandwidth_mode = BandwidthMode::kVariance;
        config.max_outer_iters = max_iters;
        const LpdskResult result = lpdsk(Dataset{points}, given, config);
        py::dict out;
        out["labels"] = result.labels;
        out["soft_labels"] = result.soft_labels;
        out["alpha"] = result.weights.alpha;
        out["objective_trace"] = result.objective_trace;
        out["converged"] = result.converged;
        out["iterations"] = result.iterations;
        out["bandwidth"] = result.bandwidth_used;
        out["ridge"] = result.ridge;
        return out;
      },
      py::arg("points"), py::arg("labeled"), py::arg("c"), py::arg("lambda_") = 0.1,
      py::arg("bandwidth") = 0.0, py::arg("bandwidth_mode") = "median",
      py::arg("max_iters") = 30);
  m.def(
      "harmonic_propagate",
      [](const Matrix& similarity, const std::vector<int>& labeled, int c) {
        PartialLabeling given;
        given.labeled_count = static_cast<int>(labeled.size());
        given.labels = labeled;
        given.num_classes = c;
        return harmonic_propagate(SimilarityMatrix{similarity, SimilarityKind::kGeneral},
                                  given);
      },
      py::arg("similarity"), py::arg("labeled"), py::arg("c"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
