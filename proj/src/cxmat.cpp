#include "bsdk/cxmat.hpp"

#include <cmath>
#include <sstream>

namespace bsdk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::OutsideClosure: return "OutsideClosure";
    case ErrorKind::OddNullity: return "OddNullity";
    case ErrorKind::NotCanonical: return "NotCanonical";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorKind::MixedComponents: return "MixedComponents";
    case ErrorKind::DivergenceDetected: return "DivergenceDetected";
    case ErrorKind::TooFarToRetract: return "TooFarToRetract";
    case ErrorKind::DomainViolation: return "DomainViolation";
  }
  return "UnknownError";
}

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

Matrix adjoint(const Matrix& m) {
  return m.adjoint();
}

HermEig herm_eig(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) {
    fail(ErrorKind::ShapeMismatch, "herm_eig requires a square matrix");
  }
  // Relative bound with a unit floor: near-zero Hermitian differences (for
  // example the defect of a boundary point) carry roundoff asymmetry at the
  // scale of the computation that produced them, not of their own norm.
  const double asym = (h - h.adjoint()).norm();
  if (asym > tol * std::max(1.0, h.norm())) {
    std::ostringstream msg;
    msg << "hermiticity deviation " << asym << " exceeds " << tol;
    fail(ErrorKind::NotHermitian, msg.str());
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::NotHermitian, "eigendecomposition failed to converge");
  }
  return HermEig{solver.eigenvalues(), solver.eigenvectors()};
}

bool is_positive_definite(const Matrix& h, double tol) {
  const HermEig eig = herm_eig(h, tol);
  return eig.eigenvalues.minCoeff() > tol;
}

Matrix inv_sqrt_psd(const Matrix& h, double tol) {
  const HermEig eig = herm_eig(h, tol);
  if (eig.eigenvalues.minCoeff() <= tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << eig.eigenvalues.minCoeff() << " <= " << tol;
    fail(ErrorKind::SingularMatrix, msg.str());
  }
  const RealVector scale = eig.eigenvalues.array().sqrt().inverse();
  return eig.vectors * scale.asDiagonal() * eig.vectors.adjoint();
}

namespace {

// Order-13 Pade coefficients for exp (Higham, scaling-and-squaring).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix mat_exp(const Matrix& x) {
  if (x.rows() != x.cols()) {
    fail(ErrorKind::ShapeMismatch, "mat_exp requires a square matrix");
  }
  if (!all_finite(x)) {
    fail(ErrorKind::DomainViolation, "mat_exp input has non-finite entries");
  }
  const Eigen::Index n = x.rows();
  const Matrix identity = Matrix::Identity(n, n);

  const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return identity;
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix a = x / std::pow(2.0, squarings);

  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
           kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
           kPade13[1] * identity);
  const Matrix v =
      a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
      kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 +
      kPade13[0] * identity;

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

Matrix polar_unitary_factor(const Matrix& z, double tol) {
  if (z.rows() < z.cols()) {
    fail(ErrorKind::ShapeMismatch, "polar_unitary_factor requires rows >= cols");
  }
  const Matrix gram = z.adjoint() * z;
  const HermEig eig = herm_eig(gram, 1e-6);
  if (eig.eigenvalues.minCoeff() <= tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue of Z^dagger Z is " << eig.eigenvalues.minCoeff();
    fail(ErrorKind::RankDeficient, msg.str());
  }
  const RealVector scale = eig.eigenvalues.array().sqrt().inverse();
  return z * (eig.vectors * scale.asDiagonal() * eig.vectors.adjoint());
}

}  // namespace bsdk
