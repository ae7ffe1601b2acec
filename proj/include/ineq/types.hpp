#pragma once

#include <Eigen/Core>

namespace ineq {

using Real = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

constexpr Real kPi = 3.14159265358979323846264338327950288;

}  // namespace ineq
