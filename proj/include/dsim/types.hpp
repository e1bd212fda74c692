#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dsim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an iterative routine fails to converge or a factorization
/// breaks down. Contract violations (bad sizes, out-of-range ids) throw
/// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsim
