#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace purcell {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr Complex iu{0.0, 1.0};

}  // namespace purcell
