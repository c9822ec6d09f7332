#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bsq {

using Real = double;
using Complex = std::complex<Real>;

// Physical-space samples f(x1_i, x2_j): row index <-> x1, column index <-> x2.
using RealGrid = Eigen::ArrayXXd;
// Spectral coefficients f_hat(xi1, xi2) in FFT index order along both axes.
using ComplexGrid = Eigen::ArrayXXcd;
using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;

}  // namespace bsq
