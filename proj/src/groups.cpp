#include "bsdk/groups.hpp"

#include <cmath>
#include <sstream>

namespace bsdk {

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::SUmn: return "SU(m,n)";
    case GroupKind::SOstar2n: return "SO*(2n)";
    case GroupKind::SpnR: return "Sp(n,R)";
  }
  return "?";
}

GroupSpec GroupSpec::su(int m, int n) {
  DomainSpec::type_i(m, n);  // validates m >= n >= 1
  return GroupSpec{GroupKind::SUmn, m, n};
}

GroupSpec GroupSpec::so_star(int n) {
  DomainSpec::type_ii(n);
  return GroupSpec{GroupKind::SOstar2n, n, n};
}

GroupSpec GroupSpec::sp_real(int n) {
  DomainSpec::type_iii(n);
  return GroupSpec{GroupKind::SpnR, n, n};
}

GroupSpec GroupSpec::for_domain(const DomainSpec& domain) {
  switch (domain.kind) {
    case DomainKind::TypeI: return su(domain.m, domain.n);
    case DomainKind::TypeII: return so_star(domain.n);
    case DomainKind::TypeIII: return sp_real(domain.n);
  }
  fail(ErrorKind::DomainViolation, "unknown domain kind");
}

DomainSpec GroupSpec::domain() const {
  switch (kind) {
    case GroupKind::SUmn: return DomainSpec::type_i(m, n);
    case GroupKind::SOstar2n: return DomainSpec::type_ii(n);
    case GroupKind::SpnR: return DomainSpec::type_iii(n);
  }
  fail(ErrorKind::DomainViolation, "unknown group kind");
}

SignatureForms signature_forms(const GroupSpec& spec) {
  const int order = spec.order();
  Matrix s = Matrix::Identity(order, order);
  s.topLeftCorner(spec.m, spec.m) *= -1.0;

  SignatureForms forms{std::move(s), std::nullopt};
  if (spec.kind == GroupKind::SOstar2n || spec.kind == GroupKind::SpnR) {
    Matrix s1 = Matrix::Zero(order, order);
    s1.topRightCorner(spec.m, spec.n) = Matrix::Identity(spec.m, spec.n);
    s1.bottomLeftCorner(spec.n, spec.m) =
        (spec.kind == GroupKind::SOstar2n ? 1.0 : -1.0) *
        Matrix::Identity(spec.n, spec.m);
    forms.s1 = std::move(s1);
  }
  return forms;
}

double membership_deviation(const GroupSpec& spec, const Matrix& g) {
  if (g.rows() != spec.order() || g.cols() != spec.order()) {
    std::ostringstream msg;
    msg << "expected order " << spec.order() << " matrix, got " << g.rows()
        << "x" << g.cols();
    fail(ErrorKind::ShapeMismatch, msg.str());
  }
  const SignatureForms forms = signature_forms(spec);
  double dev = (g * forms.s * g.adjoint() - forms.s).norm();
  if (spec.kind != GroupKind::SpnR) {
    dev = std::max(dev, std::abs(g.determinant() - Complex(1.0, 0.0)));
  }
  if (forms.s1) {
    dev = std::max(dev, (g * *forms.s1 * g.transpose() - *forms.s1).norm());
  }
  return dev;
}

bool is_group_member(const GroupSpec& spec, const Matrix& g, double tol) {
  return membership_deviation(spec, g) <= tol;
}

GroupElement GroupElement::create(const GroupSpec& spec, Matrix g, double tol) {
  const double dev = membership_deviation(spec, g);
  if (dev > tol) {
    std::ostringstream msg;
    msg << "matrix violates " << to_string(spec.kind)
        << " relations by " << dev;
    fail(ErrorKind::ConstraintViolation, msg.str());
  }
  return GroupElement(spec, std::move(g));
}

GroupElement GroupElement::identity(const GroupSpec& spec) {
  return GroupElement(spec, Matrix::Identity(spec.order(), spec.order()));
}

namespace {

double anti_hermitian_deviation(const Matrix& a) {
  return (a + a.adjoint()).norm();
}

}  // namespace

GeneratorSpec GeneratorSpec::create(const GroupSpec& spec, Matrix a, Matrix b,
                                    std::optional<Matrix> d, double tol) {
  if (a.rows() != spec.m || a.cols() != spec.m) {
    fail(ErrorKind::ConstraintViolation, "block a has the wrong shape");
  }
  if (b.rows() != spec.m || b.cols() != spec.n) {
    fail(ErrorKind::ConstraintViolation, "block b has the wrong shape");
  }
  if (anti_hermitian_deviation(a) > tol) {
    fail(ErrorKind::ConstraintViolation, "block a is not anti-Hermitian");
  }

  GeneratorSpec gen;
  gen.group_ = spec;

  switch (spec.kind) {
    case GroupKind::SUmn: {
      Matrix dd = d.value_or(Matrix::Zero(spec.n, spec.n));
      if (dd.rows() != spec.n || dd.cols() != spec.n) {
        fail(ErrorKind::ConstraintViolation, "block d has the wrong shape");
      }
      if (anti_hermitian_deviation(dd) > tol) {
        fail(ErrorKind::ConstraintViolation, "block d is not anti-Hermitian");
      }
      // Balance tr a + tr d = 0 by shifting both blocks along the center
      // direction; the induced vector field is unchanged.
      const Complex trace_sum = a.trace() + dd.trace();
      const Complex shift = trace_sum / static_cast<double>(spec.order());
      const Complex imag_shift(0.0, shift.imag());
      a -= imag_shift * Matrix::Identity(spec.m, spec.m);
      dd -= imag_shift * Matrix::Identity(spec.n, spec.n);
      gen.balance_shift_ = imag_shift;
      gen.d_ = std::move(dd);
      break;
    }
    case GroupKind::SOstar2n:
      if (d && d->size() > 0) {
        fail(ErrorKind::ConstraintViolation, "type II derives d = conj(a)");
      }
      if ((b + b.transpose()).norm() > tol) {
        fail(ErrorKind::ConstraintViolation, "block b is not antisymmetric");
      }
      break;
    case GroupKind::SpnR:
      if (d && d->size() > 0) {
        fail(ErrorKind::ConstraintViolation, "type III derives d = conj(a)");
      }
      if ((b - b.transpose()).norm() > tol) {
        fail(ErrorKind::ConstraintViolation, "block b is not symmetric");
      }
      break;
  }

  gen.a_ = std::move(a);
  gen.b_ = std::move(b);
  return gen;
}

GeneratorSpec GeneratorSpec::zero(const GroupSpec& spec) {
  return create(spec, Matrix::Zero(spec.m, spec.m), Matrix::Zero(spec.m, spec.n),
                spec.kind == GroupKind::SUmn
                    ? std::optional<Matrix>(Matrix::Zero(spec.n, spec.n))
                    : std::nullopt);
}

Matrix GeneratorSpec::d() const {
  if (group_.kind == GroupKind::SUmn) return d_;
  return a_.conjugate();
}

GeneratorSpec GeneratorSpec::with_b(Matrix b) const {
  return create(group_, a_, std::move(b),
                group_.kind == GroupKind::SUmn ? std::optional<Matrix>(d_)
                                               : std::nullopt);
}

Matrix lie_element(const GroupSpec& spec, const GeneratorSpec& gen) {
  const int order = spec.order();
  Matrix x = Matrix::Zero(order, order);
  x.topLeftCorner(spec.m, spec.m) = gen.a();
  x.topRightCorner(spec.m, spec.n) = gen.b();
  x.bottomLeftCorner(spec.n, spec.m) = gen.b().adjoint();
  x.bottomRightCorner(spec.n, spec.n) = gen.d();
  return x;
}

double algebra_deviation(const GroupSpec& spec, const Matrix& x) {
  if (x.rows() != spec.order() || x.cols() != spec.order()) {
    fail(ErrorKind::ShapeMismatch, "algebra element has the wrong order");
  }
  const SignatureForms forms = signature_forms(spec);
  double dev = (x * forms.s + forms.s * x.adjoint()).norm();
  if (spec.kind == GroupKind::SUmn) {
    dev = std::max(dev, std::abs(x.trace()));
  }
  if (forms.s1) {
    dev = std::max(dev, (x * *forms.s1 + *forms.s1 * x.transpose()).norm());
  }
  return dev;
}

GroupElement exp_group(const GroupSpec& spec, const Matrix& x, double tol) {
  const double dev = algebra_deviation(spec, x);
  if (dev > tol * std::max(1.0, x.norm())) {
    std::ostringstream msg;
    msg << "algebra relations violated by " << dev;
    fail(ErrorKind::ConstraintViolation, msg.str());
  }
  return GroupElement::create(spec, mat_exp(x), 10.0 * tol * std::max(1.0, x.norm()));
}

namespace {

// x * m^{-1} via an LU solve of the transposed system.
Matrix divide_right(const Matrix& x, const Matrix& m) {
  return m.transpose().partialPivLu().solve(x.transpose()).transpose();
}

}  // namespace

Matrix mobius_raw(const GroupSpec& spec, const Matrix& g, const Matrix& z,
                  double tol) {
  if (z.rows() != spec.m || z.cols() != spec.n) {
    fail(ErrorKind::ShapeMismatch, "point has the wrong shape for this group");
  }
  const Matrix numerator = g.topLeftCorner(spec.m, spec.m) * z +
                           g.topRightCorner(spec.m, spec.n);
  const Matrix denominator = g.bottomLeftCorner(spec.n, spec.m) * z +
                             g.bottomRightCorner(spec.n, spec.n);
  Eigen::JacobiSVD<Matrix> svd(denominator);
  const RealVector sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= tol * sv[0]) {
    fail(ErrorKind::SingularDenominator, "Cz + D is numerically singular");
  }
  return divide_right(numerator, denominator);
}

Matrix mobius(const GroupElement& h, const Matrix& z, double tol) {
  return mobius_raw(h.spec(), h.matrix(), z, tol);
}

Matrix vector_field(const GroupSpec& spec, const GeneratorSpec& gen,
                    const Matrix& z) {
  if (z.rows() != spec.m || z.cols() != spec.n) {
    fail(ErrorKind::ShapeMismatch, "point has the wrong shape for this group");
  }
  return gen.b() + gen.a() * z - z * gen.d() - z * gen.b().adjoint() * z;
}

Matrix hc_coordinate(const GroupElement& h, double tol) {
  const Matrix d = h.block_d();
  Eigen::JacobiSVD<Matrix> svd(d);
  const RealVector sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= tol * sv[0]) {
    fail(ErrorKind::SingularDenominator, "block D is numerically singular");
  }
  return divide_right(h.block_b(), d);
}

namespace {

Matrix anti_hermitian(const Matrix& g) { return 0.5 * (g - g.adjoint()); }

}  // namespace

GeneratorSpec random_generator(const GroupSpec& spec, std::uint64_t seed,
                               double scale, bool with_b) {
  std::mt19937_64 rng(seed);
  Matrix a = scale * anti_hermitian(ginibre(spec.m, spec.m, rng));
  Matrix b = Matrix::Zero(spec.m, spec.n);
  std::optional<Matrix> d;
  if (spec.kind == GroupKind::SUmn) {
    d = scale * anti_hermitian(ginibre(spec.n, spec.n, rng));
  }
  if (with_b) {
    Matrix raw = scale * ginibre(spec.m, spec.n, rng);
    switch (spec.kind) {
      case GroupKind::SUmn: b = raw; break;
      case GroupKind::SOstar2n: b = 0.5 * (raw - raw.transpose()); break;
      case GroupKind::SpnR: b = 0.5 * (raw + raw.transpose()); break;
    }
  }
  return GeneratorSpec::create(spec, std::move(a), std::move(b), std::move(d));
}

GroupElement random_element(const GroupSpec& spec, std::uint64_t seed,
                            double scale) {
  const GeneratorSpec gen = random_generator(spec, seed, scale, true);
  return exp_group(spec, lie_element(spec, gen), 1e-10);
}

}  // namespace bsdk
