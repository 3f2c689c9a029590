#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "bsdk/errors.hpp"

namespace bsdk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance on eigenvalues and residuals.
inline constexpr double kDefaultTol = 1e-9;

bool all_finite(const Matrix& m);

/// Conjugate transpose.
Matrix adjoint(const Matrix& m);

struct HermEig {
  RealVector eigenvalues;  // ascending
  Matrix vectors;          // unitary, columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Requires
/// ||H - H^dagger||_F <= tol * ||H||_F.
HermEig herm_eig(const Matrix& h, double tol = kDefaultTol);

/// True iff the smallest eigenvalue of Hermitian h exceeds tol.
bool is_positive_definite(const Matrix& h, double tol = kDefaultTol);

/// H^{-1/2} for Hermitian positive definite H (smallest eigenvalue > tol).
Matrix inv_sqrt_psd(const Matrix& h, double tol = kDefaultTol);

/// Matrix exponential, scaling-and-squaring with a fixed order-13 Pade
/// approximant.
Matrix mat_exp(const Matrix& x);

/// Unitary polar factor W = Z (Z^dagger Z)^{-1/2} for m x n Z with m >= n.
/// W is the nearest matrix with orthonormal columns in Frobenius norm and
/// inherits (anti)symmetry of square Z.
Matrix polar_unitary_factor(const Matrix& z, double tol = kDefaultTol);

}  // namespace bsdk
