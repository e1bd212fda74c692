#pragma once

#include "dsim/dataset.hpp"
#include "dsim/types.hpp"

namespace dsim {

/// Positive kernel bandwidth, in the units of feature-space distance.
struct Bandwidth {
  double value = 1.0;
};

/// Symmetric kernel evaluations K_ij = exp(-|x_i - x_j|^2 / (2 h^2)).
/// Unit diagonal by construction, entries in (0, 1].
struct GramMatrix {
  Matrix entries;
  double bandwidth = 0.0;
};

/// Normalizing constants of the Gaussian density at bandwidths h and
/// sqrt(2)*h: tau0 = (2*pi)^{-d/2} h^{-d}, tau1 = (2*pi)^{-d/2} (sqrt(2)h)^{-d}.
struct KdeConstants {
  double tau0 = 0.0;
  double tau1 = 0.0;
};

KdeConstants kde_constants(Bandwidth h, int dim);

/// exp(-|x - t|^2 / (2 h^2)); the unit-integral constant is left out.
double gaussian_kernel(const Vector& x, const Vector& t, Bandwidth h);

/// Dense gram matrix; entries computed for i <= j only and mirrored, so the
/// result is exactly symmetric with exact unit diagonal.
GramMatrix gram(const Dataset& data, Bandwidth h);

/// Gram matrix at bandwidth sqrt(2)*h, i.e. the entrywise square root of
/// gram(data, h).
GramMatrix gram_scaled_sqrt2(const Dataset& data, Bandwidth h);

enum class BandwidthMode { kMedian, kMeanDistance, kVariance };

/// Scalar bandwidth from the multiset of pairwise Euclidean distances:
/// their median, their mean, or their (population) standard deviation.
/// Throws NumericalError when the chosen statistic is not a positive scale
/// (all points identical, or equal distances in kVariance mode).
Bandwidth bandwidth_heuristic(const Dataset& data,
                              BandwidthMode mode = BandwidthMode::kMedian);

}  // namespace dsim
