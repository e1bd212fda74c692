#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_writer.hpp"

#include "dsim/classifier.hpp"
#include "dsim/dataset.hpp"
#include "dsim/graph.hpp"
#include "dsim/kernel.hpp"
#include "dsim/metrics.hpp"
#include "dsim/pipelines.hpp"
#include "dsim/similarity.hpp"
#include "dsim/solvers.hpp"

namespace {

using dsim::cli::JsonWriter;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

dsim::BandwidthMode parse_bandwidth_mode(const std::string& name) {
  if (name == "median") return dsim::BandwidthMode::kMedian;
  if (name == "mean-dist") return dsim::BandwidthMode::kMeanDistance;
  if (name == "variance") return dsim::BandwidthMode::kVariance;
  throw std::invalid_argument("unknown bandwidth mode: " + name);
}

// Options shared by the data-driven commands; a --config JSON file supplies
// values for flags the user did not pass (flags win).
struct CommonOptions {
  std::string input;
  std::string output;
  std::string config_path;
  int label_column = -1;  // -1 = absent
  int clusters = 2;
  double lambda = 0.1;
  double bandwidth = 0.0;  // 0 = use the heuristic
  std::string bandwidth_mode = "median";
  double gamma = 0.0;  // 0 = default c - 1
  double delta = 0.1;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_iters = 30;
  bool standardize = false;
};

void apply_config_overrides(const CLI::App& app, CommonOptions& options) {
  if (options.config_path.empty()) return;
  std::ifstream in(options.config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + options.config_path);
  nlohmann::json config;
  in >> config;
  const auto absent = [&](const std::string& flag) {
    const CLI::Option* option = app.get_option_no_throw(flag);
    return option != nullptr && option->count() == 0;
  };
  if (config.contains("lambda") && absent("--lambda")) options.lambda = config["lambda"];
  if (config.contains("bandwidth") && absent("--bandwidth"))
    options.bandwidth = config["bandwidth"];
  if (config.contains("bandwidth_mode") && absent("--bandwidth-mode"))
    options.bandwidth_mode = config["bandwidth_mode"];
  if (config.contains("gamma") && absent("--gamma")) options.gamma = config["gamma"];
  if (config.contains("delta") && absent("--delta")) options.delta = config["delta"];
  if (config.contains("epsilon") && absent("--epsilon")) options.epsilon = config["epsilon"];
  if (config.contains("seed") && absent("--seed")) options.seed = config["seed"];
  if (config.contains("restarts") && absent("--restarts")) options.restarts = config["restarts"];
  if (config.contains("max_iters") && absent("--max-iters"))
    options.max_iters = config["max_iters"];
  if (config.contains("c") && absent("--c")) options.clusters = config["c"];
}

dsim::PipelineConfig pipeline_config(const CommonOptions& options) {
  dsim::PipelineConfig config;
  config.num_clusters = options.clusters;
  config.lambda = options.lambda;
  if (options.bandwidth > 0.0) config.bandwidth = options.bandwidth;
  config.bandwidth_mode = parse_bandwidth_mode(options.bandwidth_mode);
  config.max_outer_iters = options.max_iters;
  config.kmeans_seed = options.seed;
  config.kmeans_restarts = options.restarts;
  return config;
}

void write_double_array(JsonWriter& json, const dsim::Vector& values) {
  json.begin_array();
  for (Eigen::Index i = 0; i < values.size(); ++i) json.number(values(i));
  json.end_array();
}

void write_matrix(JsonWriter& json, const dsim::Matrix& m) {
  json.begin_array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json.begin_array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) json.number(m(i, j));
    json.end_array();
  }
  json.end_array();
}

void write_int_array(JsonWriter& json, const std::vector<int>& values) {
  json.begin_array();
  for (int v : values) json.integer(v);
  json.end_array();
}

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write output: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream() << "\n";
    stream().flush();
  }

 private:
  std::ofstream file_;
};

void emit_provenance(JsonWriter& json, const CommonOptions& options,
                     double bandwidth_used) {
  json.key("lambda");
  json.number(options.lambda);
  json.key("bandwidth");
  json.number(bandwidth_used);
  json.key("bandwidth_mode");
  json.string(options.bandwidth > 0.0 ? "explicit" : options.bandwidth_mode);
  json.key("seed");
  json.integer(static_cast<long long>(options.seed));
  json.key("standardized");
  json.boolean(options.standardize);
}

int run_cluster(const CLI::App& app, CommonOptions options) {
  apply_config_overrides(app, options);
  if (options.clusters < 2) throw std::invalid_argument("--c must be >= 2");

  std::optional<int> label_col;
  if (options.label_column >= 0) label_col = options.label_column;
  dsim::CsvData csv = dsim::load_csv(options.input, label_col);
  if (options.standardize) csv.data = dsim::standardize(csv.data);

  const dsim::CdskResult result = dsim::cdsk(csv.data, pipeline_config(options));

  OutputTarget target(options.output);
  JsonWriter json(target.stream());
  json.begin_object();
  json.key("command");
  json.string("cluster");
  json.key("input");
  json.string(options.input);
  json.key("n");
  json.integer(csv.data.size());
  json.key("d");
  json.integer(csv.data.dim());
  json.key("c");
  json.integer(options.clusters);
  emit_provenance(json, options, result.bandwidth_used);
  json.key("kmeans_restarts");
  json.integer(options.restarts);
  json.key("max_outer_iters");
  json.integer(options.max_iters);
  json.key("labels");
  write_int_array(json, result.labels.labels);
  json.key("alpha");
  write_double_array(json, result.weights.alpha);
  json.key("objective_trace");
  json.begin_array();
  for (double v : result.objective_trace) json.number(v);
  json.end_array();
  json.key("converged");
  json.boolean(result.converged);
  json.key("iterations");
  json.integer(result.iterations);
  if (csv.labels) {
    const dsim::MetricReport report = dsim::evaluate_labels(result.labels, *csv.labels);
    json.key("metrics");
    json.begin_object();
    json.key("ac");
    json.number(report.ac);
    json.key("nmi");
    json.number(report.nmi);
    json.end_object();
  }
  json.end_object();
  target.finish();
  return kExitOk;
}

int run_ssl(const CLI::App& app, CommonOptions options) {
  apply_config_overrides(app, options);
  if (options.label_column < 0) throw std::invalid_argument("--label-col is required");

  dsim::SslCsvData csv = dsim::load_ssl_csv(options.input, options.label_column);
  if (options.standardize) csv.data = dsim::standardize(csv.data);
  const Eigen::Index n = csv.data.size();

  std::vector<Eigen::Index> order;  // labeled rows first, file order preserved
  for (Eigen::Index i = 0; i < n; ++i)
    if (csv.labels_or_zero[static_cast<std::size_t>(i)] > 0) order.push_back(i);
  const Eigen::Index labeled = static_cast<Eigen::Index>(order.size());
  if (labeled == 0)
    throw std::invalid_argument("the label column is entirely blank; nothing to propagate from");
  if (labeled == n)
    throw std::invalid_argument("no unlabeled rows; nothing to propagate to");
  for (Eigen::Index i = 0; i < n; ++i)
    if (csv.labels_or_zero[static_cast<std::size_t>(i)] == 0) order.push_back(i);

  dsim::Dataset permuted;
  permuted.points.resize(n, csv.data.dim());
  for (Eigen::Index i = 0; i < n; ++i) permuted.points.row(i) = csv.data.points.row(order[static_cast<std::size_t>(i)]);

  dsim::PartialLabeling given;
  given.labeled_count = static_cast<int>(labeled);
  given.num_classes = csv.num_classes;
  for (Eigen::Index i = 0; i < labeled; ++i)
    given.labels.push_back(csv.labels_or_zero[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);

  dsim::PipelineConfig config = pipeline_config(options);
  config.num_clusters = csv.num_classes;
  const dsim::LpdskResult result = dsim::lpdsk(permuted, given, config);

  // Back to the file's row order.
  std::vector<int> full(static_cast<std::size_t>(n), 0);
  std::vector<int> unlabeled_rows;
  for (Eigen::Index i = 0; i < labeled; ++i)
    full[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        given.labels[static_cast<std::size_t>(i)];
  for (Eigen::Index i = labeled; i < n; ++i) {
    full[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        result.labels[static_cast<std::size_t>(i - labeled)];
    unlabeled_rows.push_back(static_cast<int>(order[static_cast<std::size_t>(i)]));
  }

  OutputTarget target(options.output);
  JsonWriter json(target.stream());
  json.begin_object();
  json.key("command");
  json.string("ssl");
  json.key("input");
  json.string(options.input);
  json.key("n");
  json.integer(n);
  json.key("d");
  json.integer(csv.data.dim());
  json.key("c");
  json.integer(csv.num_classes);
  json.key("labeled_count");
  json.integer(labeled);
  emit_provenance(json, options, result.bandwidth_used);
  json.key("labels");
  write_int_array(json, full);
  json.key("unlabeled_rows");
  write_int_array(json, unlabeled_rows);
  json.key("soft_labels");
  write_matrix(json, result.soft_labels);
  json.key("alpha");
  write_double_array(json, result.weights.alpha);
  json.key("objective_trace");
  json.begin_array();
  for (double v : result.objective_trace) json.number(v);
  json.end_array();
  json.key("converged");
  json.boolean(result.converged);
  json.key("iterations");
  json.integer(result.iterations);
  json.key("ridge");
  json.number(result.ridge);
  json.end_object();
  target.finish();
  return kExitOk;
}

dsim::Weights load_alpha(const std::string& path, Eigen::Index n) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open alpha file: " + path);
  std::vector<double> values;
  double v;
  while (in >> v) {
    values.push_back(v);
    if (in.peek() == ',') in.ignore();
  }
  if (static_cast<Eigen::Index>(values.size()) != n)
    throw std::invalid_argument("alpha file has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(n));
  dsim::Weights weights{Eigen::Map<dsim::Vector>(values.data(), n)};
  weights.validate();
  return weights;
}

int run_diagnose(const CLI::App& app, CommonOptions options,
                 const std::string& alpha_path) {
  apply_config_overrides(app, options);
  if (options.label_column < 0) throw std::invalid_argument("--label-col is required");

  dsim::CsvData csv = dsim::load_csv(options.input, options.label_column);
  if (!csv.labels) throw std::invalid_argument("diagnose needs labels");
  if (options.standardize) csv.data = dsim::standardize(csv.data);
  const dsim::Labeling& labels = *csv.labels;
  const Eigen::Index n = csv.data.size();
  const int c = labels.num_classes;
  if (c < 2) throw std::invalid_argument("diagnose needs at least two classes");

  const dsim::Weights alpha =
      alpha_path.empty() ? dsim::Weights::uniform(n) : load_alpha(alpha_path, n);
  const dsim::Bandwidth h =
      options.bandwidth > 0.0
          ? dsim::Bandwidth{options.bandwidth}
          : dsim::bandwidth_heuristic(csv.data, parse_bandwidth_mode(options.bandwidth_mode));

  const double gamma = options.gamma > 0.0 ? options.gamma : static_cast<double>(c - 1);
  if (gamma < static_cast<double>(c - 1))
    std::cerr << "warning: gamma below c-1; the pairwise empirical-error form "
                 "is an upper bound only in that range\n";

  const dsim::KernelClassifier clf(csv.data, labels, alpha, h);
  const double omega_value = dsim::omega(alpha, labels, clf.gram);
  const double cap_b = std::sqrt(std::max(omega_value, 0.0));

  dsim::BoundParams params;
  params.gamma = gamma;
  params.delta = options.delta;
  params.epsilon = options.epsilon;
  params.cap_b = cap_b;

  const dsim::BoundBreakdown kernel_bound = dsim::kernel_error_bound(clf, params);

  // General-similarity route over the same gram matrix.
  const dsim::SimilarityClassifier sim_clf(clf.gram.entries, labels, alpha);
  const auto [omega_plus, omega_minus] =
      dsim::omega_plus_minus(alpha, labels, sim_clf.split);
  params.cap_b_plus = std::sqrt(std::max(omega_plus, 0.0));
  params.cap_b_minus = std::sqrt(std::max(omega_minus, 0.0));
  const dsim::BoundBreakdown similarity_bound =
      dsim::similarity_error_bound(sim_clf, params);

  // Training misclassification at the margin rule.
  int miss = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dsim::margin(clf, csv.data.points.row(i).transpose(),
                     labels.labels[static_cast<std::size_t>(i)]) < 0.0)
      ++miss;
  }
  const double training_error = static_cast<double>(miss) / static_cast<double>(n);

  const dsim::KdeConstants constants =
      dsim::kde_constants(h, static_cast<int>(csv.data.dim()));

  OutputTarget target(options.output);
  JsonWriter json(target.stream());
  json.begin_object();
  json.key("command");
  json.string("diagnose");
  json.key("input");
  json.string(options.input);
  json.key("n");
  json.integer(n);
  json.key("d");
  json.integer(csv.data.dim());
  json.key("c");
  json.integer(c);
  emit_provenance(json, options, h.value);
  json.key("gamma");
  json.number(gamma);
  json.key("delta");
  json.number(options.delta);
  json.key("epsilon");
  json.number(options.epsilon);
  json.key("alpha_source");
  json.string(alpha_path.empty() ? "uniform" : alpha_path);
  json.key("tau0");
  json.number(constants.tau0);
  json.key("tau1");
  json.number(constants.tau1);
  json.key("empirical_error_phi");
  json.number(kernel_bound.empirical);
  json.key("empirical_error_similarity");
  json.number(dsim::empirical_error_similarity(clf, gamma));
  json.key("training_error");
  json.number(training_error);
  json.key("omega");
  json.number(omega_value);
  json.key("cap_b");
  json.number(cap_b);
  json.key("rademacher_bound");
  json.number(dsim::rademacher_complexity_bound(std::max(cap_b, 1e-300), c, n,
                                                options.delta));
  json.key("theorem1_bound");
  json.number(kernel_bound.total);
  json.key("theorem1_dominant");
  json.number(kernel_bound.dominant);
  json.key("omega_plus");
  json.number(omega_plus);
  json.key("omega_minus");
  json.number(omega_minus);
  json.key("theorem5_bound");
  json.number(similarity_bound.total);
  json.key("theorem5_dominant");
  json.number(similarity_bound.dominant);

  if (c == 2) {
    const dsim::KdeClassifier kde(csv.data, labels, alpha, h);
    json.key("hat_ise");
    json.number(dsim::empirical_ise(kde));
    json.key("k_alpha");
    json.number(dsim::ise_regularizer(kde));
    json.key("theorem2_bound");
    json.number(dsim::kde_ise_bound(kde, options.epsilon));
    json.key("theorem2_failure_probability");
    json.number(dsim::ise_bound_failure_probability(n, options.epsilon));

    // Binary max-margin route: signed weights on the PSD kernel.
    std::vector<double> margins(static_cast<std::size_t>(n));
    dsim::Vector signed_alpha(n);
    for (Eigen::Index i = 0; i < n; ++i)
      signed_alpha(i) = labels.labels[static_cast<std::size_t>(i)] == 1
                            ? alpha.alpha(i)
                            : -alpha.alpha(i);
    const dsim::Vector decision = clf.gram.entries * signed_alpha;
    for (Eigen::Index i = 0; i < n; ++i)
      margins[static_cast<std::size_t>(i)] =
          (labels.labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0) * decision(i);
    const double b1 = std::sqrt(std::max(signed_alpha.dot(clf.gram.entries * signed_alpha), 0.0));
    std::vector<double> diag_plus(static_cast<std::size_t>(n), 1.0);
    std::vector<double> diag_minus(static_cast<std::size_t>(n), 0.0);
    json.key("similarity_machine_bound");
    json.number(dsim::similarity_machine_bound(margins, gamma, b1, 0.0, diag_plus,
                                               diag_minus, options.delta));
  } else {
    json.key("hat_ise");
    json.null();
    json.key("k_alpha");
    json.null();
    json.key("theorem2_bound");
    json.null();
    json.key("theorem2_failure_probability");
    json.null();
    json.key("similarity_machine_bound");
    json.null();
  }
  json.end_object();
  target.finish();
  return kExitOk;
}

int run_decompose(const CommonOptions& options) {
  const dsim::CsvData csv = dsim::load_csv(options.input);
  const dsim::Matrix& s = csv.data.points;
  if (s.rows() != s.cols())
    throw std::invalid_argument("decompose expects a square matrix CSV");

  const dsim::KernelSplit split = dsim::decompose_similarity(s);
  const dsim::Matrix symmetric = 0.5 * (s + s.transpose());
  const double reconstruction =
      ((split.plus - split.minus) - symmetric).cwiseAbs().maxCoeff();
  const dsim::EigenResult eig_plus = dsim::eigen_symmetric(split.plus);
  const dsim::EigenResult eig_minus = dsim::eigen_symmetric(split.minus);

  OutputTarget target(options.output);
  JsonWriter json(target.stream());
  json.begin_object();
  json.key("command");
  json.string("decompose");
  json.key("input");
  json.string(options.input);
  json.key("n");
  json.integer(s.rows());
  json.key("reconstruction_error");
  json.number(reconstruction);
  json.key("min_eigenvalue_plus");
  json.number(eig_plus.eigenvalues(0));
  json.key("min_eigenvalue_minus");
  json.number(eig_minus.eigenvalues(0));
  json.key("max_abs_minus");
  json.number(split.minus.cwiseAbs().maxCoeff());
  json.key("split_orthogonality");
  json.number((split.plus * split.minus).trace());
  json.key("s_plus");
  write_matrix(json, split.plus);
  json.key("s_minus");
  write_matrix(json, split.minus);
  json.end_object();
  target.finish();
  return kExitOk;
}

struct GenOptions {
  std::string kind = "blobs";
  std::string output;
  std::uint64_t seed = 0;
  int n_per_class = 50;
  int clusters = 2;
  int dims = 2;
  double separation = 10.0;
  double sigma = 1.0;
  int moons_n = 200;
  double noise = 0.05;
};

int run_gen(const GenOptions& options) {
  dsim::LabeledDataset generated;
  if (options.kind == "blobs") {
    generated = dsim::generate_blobs(options.seed, options.n_per_class, options.clusters,
                                     options.dims, options.separation, options.sigma);
  } else if (options.kind == "moons") {
    generated = dsim::generate_two_moons(options.seed, options.moons_n, options.noise);
  } else {
    throw std::invalid_argument("unknown --kind: " + options.kind);
  }
  if (options.output.empty()) throw std::invalid_argument("--out is required");
  dsim::write_csv(options.output, generated.data, &generated.labels);

  JsonWriter json(std::cout);
  json.begin_object();
  json.key("command");
  json.string("gen");
  json.key("kind");
  json.string(options.kind);
  json.key("n");
  json.integer(generated.data.size());
  json.key("d");
  json.integer(generated.data.dim());
  json.key("c");
  json.integer(generated.labels.num_classes);
  json.key("seed");
  json.integer(static_cast<long long>(options.seed));
  json.key("out");
  json.string(options.output);
  json.end_object();
  std::cout << "\n";
  return kExitOk;
}

void add_common_flags(CLI::App* cmd, CommonOptions& options, bool wants_clusters) {
  cmd->add_option("--input", options.input, "input CSV path")->required();
  cmd->add_option("--out", options.output, "output JSON path (stdout if omitted)");
  cmd->add_option("--config", options.config_path, "JSON file with default option values");
  cmd->add_option("--label-col", options.label_column, "0-based label column index");
  if (wants_clusters) cmd->add_option("--c", options.clusters, "number of clusters");
  cmd->add_option("--lambda", options.lambda, "regularization weight (default 0.1)");
  cmd->add_option("--bandwidth", options.bandwidth, "explicit kernel bandwidth");
  cmd->add_option("--bandwidth-mode", options.bandwidth_mode,
                  "median | mean-dist | variance (default median)");
  cmd->add_option("--gamma", options.gamma, "margin scale (default c-1)");
  cmd->add_option("--delta", options.delta, "confidence level (default 0.1)");
  cmd->add_option("--epsilon", options.epsilon, "concentration slack (default 0.1)");
  cmd->add_option("--seed", options.seed, "PRNG seed (default 0)");
  cmd->add_option("--restarts", options.restarts, "k-means restarts (default 8)");
  cmd->add_option("--max-iters", options.max_iters, "outer iteration cap (default 30)");
  cmd->add_flag("--standardize", options.standardize, "standardize features first");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminative-similarity clustering and semi-supervised learning"};
  app.require_subcommand(1);

  CommonOptions cluster_options;
  CLI::App* cluster_cmd = app.add_subcommand("cluster", "run CDSK clustering");
  add_common_flags(cluster_cmd, cluster_options, /*wants_clusters=*/true);

  CommonOptions ssl_options;
  CLI::App* ssl_cmd =
      app.add_subcommand("ssl", "run LPDSK label propagation (blank labels = unlabeled)");
  add_common_flags(ssl_cmd, ssl_options, /*wants_clusters=*/false);

  CommonOptions diagnose_options;
  std::string alpha_path;
  CLI::App* diagnose_cmd =
      app.add_subcommand("diagnose", "emit classifier diagnostics and error bounds");
  add_common_flags(diagnose_cmd, diagnose_options, /*wants_clusters=*/false);
  diagnose_cmd->add_option("--alpha", alpha_path, "file with n weights (uniform if omitted)");

  CommonOptions decompose_options;
  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "split a symmetric matrix CSV into PSD parts");
  decompose_cmd->add_option("--input", decompose_options.input, "square matrix CSV")->required();
  decompose_cmd->add_option("--out", decompose_options.output, "output JSON path");

  GenOptions gen_options;
  CLI::App* gen_cmd = app.add_subcommand("gen", "write a synthetic dataset CSV");
  gen_cmd->add_option("--kind", gen_options.kind, "blobs | moons");
  gen_cmd->add_option("--out", gen_options.output, "output CSV path")->required();
  gen_cmd->add_option("--seed", gen_options.seed, "PRNG seed");
  gen_cmd->add_option("--n-per-class", gen_options.n_per_class, "points per blob");
  gen_cmd->add_option("--c", gen_options.clusters, "number of blobs");
  gen_cmd->add_option("--d", gen_options.dims, "feature dimension");
  gen_cmd->add_option("--separation", gen_options.separation, "blob center spacing");
  gen_cmd->add_option("--sigma", gen_options.sigma, "blob standard deviation");
  gen_cmd->add_option("--n", gen_options.moons_n, "total points (moons)");
  gen_cmd->add_option("--noise", gen_options.noise, "noise level (moons)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cluster_cmd->parsed()) return run_cluster(*cluster_cmd, cluster_options);
    if (ssl_cmd->parsed()) return run_ssl(*ssl_cmd, ssl_options);
    if (diagnose_cmd->parsed()) return run_diagnose(*diagnose_cmd, diagnose_options, alpha_path);
    if (decompose_cmd->parsed()) return run_decompose(decompose_options);
    if (gen_cmd->parsed()) return run_gen(gen_options);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
