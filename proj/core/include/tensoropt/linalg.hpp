#pragma once

#include <Eigen/Core>

namespace tensoropt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace tensoropt
