#pragma once

#include <cmath>
#include <random>

#include "dsim/dataset.hpp"
#include "dsim/similarity.hpp"
#include "dsim/types.hpp"

namespace dsim::test {

/// Exponential draws normalized to the simplex (Dirichlet(1,...,1)).
inline Weights random_simplex(std::mt19937_64& gen, Eigen::Index n) {
  std::uniform_real_distribution<double> unit(1e-12, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = -std::log(unit(gen));
  v /= v.sum();
  return Weights{v};
}

inline Labeling random_labeling(std::mt19937_64& gen, Eigen::Index n, int c) {
  std::uniform_int_distribution<int> pick(1, c);
  Labeling out;
  out.num_classes = c;
  for (Eigen::Index i = 0; i < n; ++i) out.labels.push_back(pick(gen));
  return out;
}

inline Dataset random_dataset(std::mt19937_64& gen, Eigen::Index n, Eigen::Index d,
                              double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Dataset out;
  out.points.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out.points(i, j) = normal(gen);
  return out;
}

inline Matrix random_symmetric(std::mt19937_64& gen, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      a(i, j) = normal(gen);
      a(j, i) = a(i, j);
    }
  return a;
}

/// Composite Simpson rule on [lo, hi] with `intervals` (made even) panels.
template <typename F>
double simpson(F&& f, double lo, double hi, int intervals) {
  if (intervals % 2) ++intervals;
  const double step = (hi - lo) / intervals;
  double total = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i)
    total += f(lo + i * step) * (i % 2 ? 4.0 : 2.0);
  return total * step / 3.0;
}

}  // namespace dsim::test
