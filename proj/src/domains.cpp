#include "bsdk/domains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bsdk {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::TypeI: return "I";
    case DomainKind::TypeII: return "II";
    case DomainKind::TypeIII: return "III";
  }
  return "?";
}

DomainSpec DomainSpec::type_i(int m, int n) {
  if (n < 1 || m < n) {
    std::ostringstream msg;
    msg << "type I requires m >= n >= 1, got m=" << m << " n=" << n;
    fail(ErrorKind::DomainViolation, msg.str());
  }
  return DomainSpec{DomainKind::TypeI, m, n};
}

DomainSpec DomainSpec::type_ii(int n) {
  if (n < 2) {
    std::ostringstream msg;
    msg << "type II requires n >= 2 (n = 1 is a point), got n=" << n;
    fail(ErrorKind::DomainViolation, msg.str());
  }
  return DomainSpec{DomainKind::TypeII, n, n};
}

DomainSpec DomainSpec::type_iii(int n) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "type III requires n >= 1, got n=" << n;
    fail(ErrorKind::DomainViolation, msg.str());
  }
  return DomainSpec{DomainKind::TypeIII, n, n};
}

namespace {

void require_shape(const DomainSpec& spec, const Matrix& z) {
  if (z.rows() != spec.m || z.cols() != spec.n) {
    std::ostringstream msg;
    msg << "expected " << spec.m << "x" << spec.n << " matrix, got "
        << z.rows() << "x" << z.cols();
    fail(ErrorKind::ShapeMismatch, msg.str());
  }
}

void require_structure(const DomainSpec& spec, const Matrix& z, double tol) {
  if (!structure_check(spec, z, tol)) {
    fail(ErrorKind::StructureViolation,
         spec.kind == DomainKind::TypeII ? "matrix is not antisymmetric"
                                         : "matrix is not symmetric");
  }
}

// Eigenvalues of the defect Id_m - z z^dagger, ascending.
RealVector defect_eigenvalues(const DomainSpec& spec, const Matrix& z) {
  const Matrix defect = Matrix::Identity(spec.m, spec.m) - z * z.adjoint();
  return herm_eig(defect, 1e-8).eigenvalues;
}

}  // namespace

bool structure_check(const DomainSpec& spec, const Matrix& z, double tol) {
  require_shape(spec, z);
  switch (spec.kind) {
    case DomainKind::TypeI:
      return true;
    case DomainKind::TypeII:
      return (z + z.transpose()).norm() <= tol;
    case DomainKind::TypeIII:
      return (z - z.transpose()).norm() <= tol;
  }
  return false;
}

bool contains_interior(const DomainSpec& spec, const Matrix& z, double tol) {
  require_structure(spec, z, std::max(tol, 1e-12));
  return defect_eigenvalues(spec, z).minCoeff() > tol;
}

BoundaryClass boundary_rank(const DomainSpec& spec, const Matrix& z, double tol) {
  require_structure(spec, z, std::max(tol, 1e-12));
  const RealVector eigenvalues = defect_eigenvalues(spec, z);
  if (eigenvalues.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "defect eigenvalue " << eigenvalues.minCoeff() << " below -" << tol;
    fail(ErrorKind::OutsideClosure, msg.str());
  }
  int zeros = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i]) <= tol) ++zeros;
  }
  if (spec.kind == DomainKind::TypeII) {
    if (zeros % 2 != 0) {
      std::ostringstream msg;
      msg << "type II null count " << zeros << " is odd";
      fail(ErrorKind::OddNullity, msg.str());
    }
    return BoundaryClass{zeros / 2};
  }
  return BoundaryClass{zeros};
}

double bs_deviation(const DomainSpec& spec, const Matrix& z) {
  const Matrix gram = z.adjoint() * z;
  if (spec.kind == DomainKind::TypeII && spec.n % 2 == 1) {
    // Odd type II: z^dagger z should be the projector with spectrum
    // (0, 1, ..., 1).
    const RealVector eigenvalues = herm_eig(gram, 1e-8).eigenvalues;
    double dev = std::abs(eigenvalues[0]);
    for (Eigen::Index i = 1; i < eigenvalues.size(); ++i) {
      dev = std::max(dev, std::abs(eigenvalues[i] - 1.0));
    }
    return dev;
  }
  return (Matrix::Identity(spec.n, spec.n) - gram).norm();
}

bool on_bs_boundary(const DomainSpec& spec, const Matrix& z, double tol) {
  require_structure(spec, z, std::max(tol, 1e-12));
  return bs_deviation(spec, z) <= tol;
}

CanonicalForm canonical_form(const DomainSpec& spec, const Matrix& z, double tol) {
  require_shape(spec, z);
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();  // descending
  if (sv.size() > 0 && sv[0] > 1.0 + tol) {
    std::ostringstream msg;
    msg << "largest singular value " << sv[0] << " exceeds 1";
    fail(ErrorKind::OutsideClosure, msg.str());
  }

  Matrix u = svd.matrixU();
  Matrix v = svd.matrixV();
  // Deterministic phases: first significant component of each left singular
  // vector made real positive.
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, j)) > 1e-12) {
        pivot = i;
        break;
      }
    }
    const Complex value = u(pivot, j);
    if (std::abs(value) > 1e-12) {
      const Complex phase = value / std::abs(value);
      u.col(j) *= std::conj(phase);
      if (j < v.cols()) v.col(j) *= std::conj(phase);
    }
  }

  CanonicalForm form;
  form.u1 = u.adjoint();
  form.u2 = v.adjoint();
  int t = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] >= 1.0 - tol) {
      ++t;
    } else {
      form.residual_sv.push_back(sv[i]);
    }
  }
  form.rank = BoundaryClass{spec.kind == DomainKind::TypeII ? t / 2 : t};
  return form;
}

std::optional<DomainSpec> reduced_domain(const DomainSpec& spec, int t) {
  if (t < 0) fail(ErrorKind::DomainViolation, "negative reduction step");
  if (t == 0) return spec;
  switch (spec.kind) {
    case DomainKind::TypeI:
      if (spec.n - t < 1) return std::nullopt;
      return DomainSpec::type_i(spec.m - t, spec.n - t);
    case DomainKind::TypeII:
      if (spec.n - 2 * t < 2) return std::nullopt;
      return DomainSpec::type_ii(spec.n - 2 * t);
    case DomainKind::TypeIII:
      if (spec.n - t < 1) return std::nullopt;
      return DomainSpec::type_iii(spec.n - t);
  }
  return std::nullopt;
}

ComponentProjection project_component(const DomainSpec& spec, const Matrix& z,
                                      double tol) {
  require_shape(spec, z);
  const int t = boundary_rank(spec, z, tol).t;
  if (t < 1) {
    fail(ErrorKind::NotCanonical, "interior point has no boundary component");
  }
  const int lead = spec.kind == DomainKind::TypeII ? 2 * t : t;
  const Matrix expected = spec.kind == DomainKind::TypeII
                              ? antisymmetric_unit(t)
                              : Matrix(Matrix::Identity(lead, lead));
  if ((z.topLeftCorner(lead, lead) - expected).norm() > tol ||
      z.topRightCorner(lead, spec.n - lead).norm() > tol ||
      z.bottomLeftCorner(spec.m - lead, lead).norm() > tol) {
    fail(ErrorKind::NotCanonical, "leading block is not in canonical form");
  }
  const auto sub = reduced_domain(spec, t);
  if (!sub) {
    fail(ErrorKind::NotCanonical, "component projects to a point");
  }
  return ComponentProjection{*sub,
                             z.bottomRightCorner(spec.m - lead, spec.n - lead)};
}

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix haar_unitary(int n, std::mt19937_64& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix antisymmetric_unit(int t) {
  Matrix j = Matrix::Zero(2 * t, 2 * t);
  j.topRightCorner(t, t) = Matrix::Identity(t, t);
  j.bottomLeftCorner(t, t) = -Matrix::Identity(t, t);
  return j;
}

namespace {

// Exact structural symmetrization: (anti)symmetry holds bitwise afterwards.
Matrix apply_structure(const DomainSpec& spec, const Matrix& z) {
  switch (spec.kind) {
    case DomainKind::TypeI:
      return z;
    case DomainKind::TypeII:
      return 0.5 * (z - z.transpose());
    case DomainKind::TypeIII:
      return 0.5 * (z + z.transpose());
  }
  return z;
}

}  // namespace

Matrix sample_interior(const DomainSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix z = apply_structure(spec, ginibre(spec.m, spec.n, rng));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double target = uniform(rng);
  Eigen::JacobiSVD<Matrix> svd(z);
  const double top = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  if (top > 0.0) {
    z *= target / top;
  }
  return z;
}

Matrix sample_bs_boundary(const DomainSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (spec.kind) {
    case DomainKind::TypeI: {
      const Matrix u1 = haar_unitary(spec.m, rng);
      const Matrix u2 = haar_unitary(spec.n, rng);
      return u1.leftCols(spec.n) * u2.adjoint();
    }
    case DomainKind::TypeII: {
      const int l = spec.n / 2;
      Matrix j = Matrix::Zero(spec.n, spec.n);
      j.topLeftCorner(2 * l, 2 * l) = antisymmetric_unit(l);
      const Matrix u = haar_unitary(spec.n, rng);
      return apply_structure(spec, u * j * u.transpose());
    }
    case DomainKind::TypeIII: {
      const Matrix u = haar_unitary(spec.n, rng);
      return apply_structure(spec, u * u.transpose());
    }
  }
  fail(ErrorKind::DomainViolation, "unknown domain kind");
}

Dims dims(const DomainSpec& spec) {
  switch (spec.kind) {
    case DomainKind::TypeI:
      return Dims{2 * spec.m * spec.n, spec.n * (2 * spec.m - spec.n)};
    case DomainKind::TypeII:
      return Dims{spec.n * (spec.n - 1), spec.n * (spec.n - 1) / 2};
    case DomainKind::TypeIII:
      return Dims{spec.n * (spec.n + 1), spec.n * (spec.n + 1) / 2};
  }
  fail(ErrorKind::DomainViolation, "unknown domain kind");
}

}  // namespace bsdk
