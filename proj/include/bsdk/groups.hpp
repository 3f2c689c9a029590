#pragma once

#include <optional>

#include "bsdk/domains.hpp"

namespace bsdk {

enum class GroupKind { SUmn, SOstar2n, SpnR };

const char* to_string(GroupKind kind);

struct GroupSpec {
  GroupKind kind;
  int m;
  int n;

  static GroupSpec su(int m, int n);
  static GroupSpec so_star(int n);   // SO*(2n), block size n
  static GroupSpec sp_real(int n);   // Sp(n, R), block size n

  static GroupSpec for_domain(const DomainSpec& domain);
  DomainSpec domain() const;

  int order() const { return m + n; }
  bool operator==(const GroupSpec&) const = default;
};

struct SignatureForms {
  Matrix s;                  // the Hermitian signature form
  std::optional<Matrix> s1;  // the bilinear form (types II/III only)
};

SignatureForms signature_forms(const GroupSpec& spec);

/// Deviation of g from the defining relations (max over the form residuals
/// and |det g - 1| where applicable).
double membership_deviation(const GroupSpec& spec, const Matrix& g);

bool is_group_member(const GroupSpec& spec, const Matrix& g, double tol = kDefaultTol);

/// A validated element of one of the three groups, in block form
/// [[A, B], [C, D]] with A of order m and D of order n.
class GroupElement {
 public:
  static GroupElement create(const GroupSpec& spec, Matrix g, double tol = kDefaultTol);
  static GroupElement identity(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const Matrix& matrix() const { return g_; }

  Matrix block_a() const { return g_.topLeftCorner(spec_.m, spec_.m); }
  Matrix block_b() const { return g_.topRightCorner(spec_.m, spec_.n); }
  Matrix block_c() const { return g_.bottomLeftCorner(spec_.n, spec_.m); }
  Matrix block_d() const { return g_.bottomRightCorner(spec_.n, spec_.n); }

 private:
  GroupElement(GroupSpec spec, Matrix g) : spec_(spec), g_(std::move(g)) {}
  GroupSpec spec_;
  Matrix g_;
};

/// Lie algebra data (a, b, d): a is m x m anti-Hermitian; type I carries an
/// independent anti-Hermitian d with tr a + tr d = 0 (imbalanced traces are
/// shifted at construction and the shift recorded); types II/III derive
/// d = conj(a) and constrain b to be anti/symmetric.
class GeneratorSpec {
 public:
  /// Zero su(1,1) generator; reassign via create()/zero() before use.
  GeneratorSpec()
      : a_(Matrix::Zero(1, 1)), b_(Matrix::Zero(1, 1)), d_(Matrix::Zero(1, 1)) {}

  static GeneratorSpec create(const GroupSpec& spec, Matrix a, Matrix b,
                              std::optional<Matrix> d = std::nullopt,
                              double tol = kDefaultTol);
  static GeneratorSpec zero(const GroupSpec& spec);

  const GroupSpec& group() const { return group_; }
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  Matrix d() const;

  /// With a different coupling block, other constraints untouched.
  GeneratorSpec with_b(Matrix b) const;

  /// Imaginary scalar subtracted from both diagonal blocks to balance traces
  /// (type I only, zero otherwise).
  Complex balance_shift() const { return balance_shift_; }

 private:
  GroupSpec group_{GroupKind::SUmn, 1, 1};
  Matrix a_;
  Matrix b_;
  Matrix d_;  // stored for type I, empty otherwise
  Complex balance_shift_{0.0, 0.0};
};

/// Full (m+n) x (m+n) Lie algebra matrix [[a, b], [b^dagger, d]].
Matrix lie_element(const GroupSpec& spec, const GeneratorSpec& gen);

/// Deviation of X from the Lie algebra relations (Xs + sX^dagger and, where
/// applicable, Xs1 + s1 X^T).
double algebra_deviation(const GroupSpec& spec, const Matrix& x);

GroupElement exp_group(const GroupSpec& spec, const Matrix& x, double tol = kDefaultTol);

/// Matrix Moebius action z -> (Az + B)(Cz + D)^{-1}.
Matrix mobius(const GroupElement& h, const Matrix& z, double tol = 1e-12);

/// Same action on a raw group matrix (no membership validation).
Matrix mobius_raw(const GroupSpec& spec, const Matrix& g, const Matrix& z,
                  double tol = 1e-12);

/// Infinitesimal action b + a z - z d - z b^dagger z.
Matrix vector_field(const GroupSpec& spec, const GeneratorSpec& gen, const Matrix& z);

/// Harish-Chandra coordinate Z = B D^{-1} of a group element.
Matrix hc_coordinate(const GroupElement& h, double tol = 1e-12);

/// Seeded random generator with unit-scale blocks (b present iff with_b).
GeneratorSpec random_generator(const GroupSpec& spec, std::uint64_t seed,
                               double scale = 1.0, bool with_b = true);

/// Seeded random group element exp(X) for X a random generator.
GroupElement random_element(const GroupSpec& spec, std::uint64_t seed,
                            double scale = 1.0);

}  // namespace bsdk
