#pragma once

#include <Eigen/Dense>
#include <complex>

namespace freeorth {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

/// Largest singular value (operator norm between plain l2 spaces).
double operator_norm(const CMat& m);

/// Largest eigenvalue of a Hermitian positive semidefinite matrix.
double largest_eigenvalue_psd(const CMat& m);

}  // namespace freeorth
