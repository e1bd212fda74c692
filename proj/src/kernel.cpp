#include "dsim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dsim {

namespace {

void check_bandwidth(Bandwidth h) {
  if (!(h.value > 0.0) || !std::isfinite(h.value))
    throw std::invalid_argument("bandwidth must be positive and finite");
}

GramMatrix gram_at(const Dataset& data, double h) {
  const Eigen::Index n = data.size();
  GramMatrix out;
  out.bandwidth = h;
  out.entries.resize(n, n);
  const double inv = 1.0 / (2.0 * h * h);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sq = (data.points.row(i) - data.points.row(j)).squaredNorm();
      const double value = std::exp(-sq * inv);
      out.entries(i, j) = value;
      out.entries(j, i) = value;
    }
  }
  return out;
}

}  // namespace

KdeConstants kde_constants(Bandwidth h, int dim) {
  check_bandwidth(h);
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  const double base = std::pow(kTwoPi, -0.5 * dim);
  KdeConstants out;
  out.tau0 = base * std::pow(h.value, -dim);
  out.tau1 = base * std::pow(std::sqrt(2.0) * h.value, -dim);
  return out;
}

double gaussian_kernel(const Vector& x, const Vector& t, Bandwidth h) {
  check_bandwidth(h);
  if (x.size() != t.size()) throw std::invalid_argument("dimension mismatch");
  return std::exp(-(x - t).squaredNorm() / (2.0 * h.value * h.value));
}

GramMatrix gram(const Dataset& data, Bandwidth h) {
  check_bandwidth(h);
  return gram_at(data, h.value);
}

GramMatrix gram_scaled_sqrt2(const Dataset& data, Bandwidth h) {
  check_bandwidth(h);
  return gram_at(data, std::sqrt(2.0) * h.value);
}

Bandwidth bandwidth_heuristic(const Dataset& data, BandwidthMode mode) {
  const Eigen::Index n = data.size();
  if (n < 2) throw std::invalid_argument("bandwidth heuristic needs at least 2 points");
  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      distances.push_back((data.points.row(i) - data.points.row(j)).norm());

  double h = 0.0;
  switch (mode) {
    case BandwidthMode::kMedian: {
      std::sort(distances.begin(), distances.end());
      const std::size_t m = distances.size();
      h = m % 2 ? distances[m / 2] : 0.5 * (distances[m / 2 - 1] + distances[m / 2]);
      break;
    }
    case BandwidthMode::kMeanDistance: {
      double sum = 0.0;
      for (double x : distances) sum += x;
      h = sum / static_cast<double>(distances.size());
      break;
    }
    case BandwidthMode::kVariance: {
      double sum = 0.0;
      for (double x : distances) sum += x;
      const double mean = sum / static_cast<double>(distances.size());
      double ss = 0.0;
      for (double x : distances) ss += (x - mean) * (x - mean);
      h = std::sqrt(ss / static_cast<double>(distances.size()));
      break;
    }
  }
  if (!(h > 0.0) || !std::isfinite(h))
    throw NumericalError("bandwidth heuristic got a zero distance scale");
  return Bandwidth{h};
}

}  // namespace dsim
