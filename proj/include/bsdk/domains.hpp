#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bsdk/cxmat.hpp"

namespace bsdk {

enum class DomainKind { TypeI, TypeII, TypeIII };

const char* to_string(DomainKind kind);

/// One bounded symmetric domain: type I is m x n with m >= n, types II/III
/// are square antisymmetric/symmetric matrices of order n.
struct DomainSpec {
  DomainKind kind;
  int m;
  int n;

  static DomainSpec type_i(int m, int n);
  static DomainSpec type_ii(int n);
  static DomainSpec type_iii(int n);

  bool operator==(const DomainSpec&) const = default;
};

/// Boundary component index: t = 0 is the interior, t = n (types I/III)
/// or t = floor(n/2) (type II) is the Bergman-Shilov boundary.
struct BoundaryClass {
  int t = 0;
  bool operator==(const BoundaryClass&) const = default;
};

struct Dims {
  int domain_real;
  int bs_real;
};

struct CanonicalForm {
  BoundaryClass rank;
  std::vector<double> residual_sv;  // singular values of the non-unit block
  Matrix u1;                        // U(m)
  Matrix u2;                        // U(n); u1 * z * u2^{-1} is canonical
};

struct ComponentProjection {
  DomainSpec sub;
  Matrix z_sub;
};

/// Shape plus type-specific (anti)symmetry. Throws ShapeMismatch on wrong
/// dimensions; returns false on a symmetry violation beyond tol.
bool structure_check(const DomainSpec& spec, const Matrix& z, double tol = kDefaultTol);

/// True iff Id_m - z z^dagger is positive definite (open domain membership).
bool contains_interior(const DomainSpec& spec, const Matrix& z, double tol = kDefaultTol);

/// Number of zero eigenvalues of Id_m - z z^dagger within [-tol, tol]
/// (halved for type II). Eigenvalues below -tol raise OutsideClosure.
BoundaryClass boundary_rank(const DomainSpec& spec, const Matrix& z, double tol = kDefaultTol);

/// Deviation of z from the Bergman-Shilov boundary: ||Id_n - z^dagger z||_F,
/// except odd type II where it is the max eigenvalue deviation of z^dagger z
/// from the rank n-1 projector spectrum.
double bs_deviation(const DomainSpec& spec, const Matrix& z);

bool on_bs_boundary(const DomainSpec& spec, const Matrix& z, double tol = kDefaultTol);

/// Diagonalization u1 * z * u2^{-1} = diag(Id_t, X) by unitaries, singular
/// values of X all below 1 - tol.
CanonicalForm canonical_form(const DomainSpec& spec, const Matrix& z, double tol = kDefaultTol);

/// Extract the residual block of a canonical boundary point and the
/// sub-domain it lives in (type I: (m-t, n-t); II: n-2t; III: n-t).
ComponentProjection project_component(const DomainSpec& spec, const Matrix& z,
                                      double tol = kDefaultTol);

/// Sub-domain spec after t reduction steps, or nullopt when the chain ends
/// in a point.
std::optional<DomainSpec> reduced_domain(const DomainSpec& spec, int t);

Matrix sample_interior(const DomainSpec& spec, std::uint64_t seed);
Matrix sample_bs_boundary(const DomainSpec& spec, std::uint64_t seed);

/// Real dimensions of the domain and of its Bergman-Shilov boundary.
Dims dims(const DomainSpec& spec);

/// Complex Ginibre matrix (iid standard complex Gaussian entries).
Matrix ginibre(int rows, int cols, std::mt19937_64& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase-fixed R.
Matrix haar_unitary(int n, std::mt19937_64& rng);

/// The 2t x 2t block [[0, Id_t], [-Id_t, 0]].
Matrix antisymmetric_unit(int t);

}  // namespace bsdk
