#pragma once

#include <Eigen/Dense>

namespace mdi {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace mdi
