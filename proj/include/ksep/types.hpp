// Common scalar/vector/matrix aliases used throughout the library.
#pragma once

#include <Eigen/Dense>

namespace ksep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Coefficient vectors live in R^n, indexed by training examples.
using CoefficientVector = Vector;

}  // namespace ksep
