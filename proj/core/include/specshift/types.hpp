#pragma once

#include <complex>

#include <Eigen/Dense>

namespace specshift {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace specshift
