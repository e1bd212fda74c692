#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsim/dataset.hpp"
#include "dsim/graph.hpp"
#include "dsim/kernel.hpp"
#include "dsim/similarity.hpp"
#include "dsim/solvers.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// Shared configuration of the CDSK and LPDSK coordinate-descent loops.
struct PipelineConfig {
  int num_clusters = 2;                 // ignored by lpdsk (classes come from the labels)
  double lambda = 0.1;                  // <= 2 keeps the similarity nonnegative
  std::optional<double> bandwidth;      // explicit value; otherwise heuristic
  BandwidthMode bandwidth_mode = BandwidthMode::kMedian;
  int max_outer_iters = 30;
  double convergence_rel_tol = 1e-8;
  double qp_tol = 1e-8;
  int qp_max_iter = 10000;
  std::uint64_t kmeans_seed = 0;
  int kmeans_restarts = 8;
};

using CdskConfig = PipelineConfig;

struct CdskResult {
  Labeling labels;
  Weights weights;
  Matrix embedding;                     // n x c, satisfies Y' D Y = I
  std::vector<double> objective_trace;  // value after each full outer iteration
  bool converged = false;
  int iterations = 0;
  double bandwidth_used = 0.0;
};

/// Clustering by discriminative similarity via kernel classification:
/// alternates a spectral embedding step at fixed weights with a simplex-QP
/// weight step at the hardened labels. The recorded objective trace is
/// non-increasing; an iteration that would raise it is rolled back and the
/// loop stops there.
CdskResult cdsk(const Dataset& data, const CdskConfig& config);

struct LpdskResult {
  std::vector<int> labels;              // for the unlabeled points, by row-argmax
  Matrix soft_labels;                   // (n - l) x c harmonic solution
  Weights weights;
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations = 0;
  double bandwidth_used = 0.0;
  double ridge = 0.0;                   // added to the unlabeled Laplacian block
};

/// Label propagation with the learned discriminative similarity: alternates
/// the harmonic solve for the unlabeled block with the same weight step as
/// cdsk. Every class must appear among the labeled points. An iteration that
/// raises the objective, or whose kernel vote stops agreeing with the given
/// labels, is rolled back and the loop stops there; without that anchor the
/// objective keeps improving while the weights collapse onto a few points
/// and the propagated labeling degenerates.
LpdskResult lpdsk(const Dataset& data, const PartialLabeling& given,
                  const PipelineConfig& config);

/// One harmonic step on a fixed similarity graph: solves
/// L_uu Y_u = -L_ul F_l for the unlabeled rows (labeled points come first).
/// Throws NumericalError when the unlabeled block is singular, naming an
/// unlabeled vertex with no path to a labeled one.
Matrix harmonic_propagate(const SimilarityMatrix& s, const PartialLabeling& given,
                          double* ridge_used = nullptr);

/// The weight step of both pipelines at fixed hard labels, as a simplex QP:
/// the cut and regularizer terms are quadratic through the same-class mask,
/// everything else is linear in the weights. Its objective value equals the
/// labeling-selection objective at those labels.
QpProblem weight_subproblem(const GramMatrix& gram, const Labeling& labels,
                            double lambda);

}  // namespace dsim
