#pragma once

#include <Eigen/Core>

namespace sparsetls {

// Dense storage, row-major, 64-bit floats throughout.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace sparsetls
