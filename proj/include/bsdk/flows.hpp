#pragma once

#include <vector>

#include "bsdk/groups.hpp"

namespace bsdk {

/// One member of a Kuramoto family: the domain, how many reduction steps t
/// down the boundary chain, the coupling, and the constant drift generator
/// (its b block is zero; the mean field is substituted at evaluation time).
struct ModelSpec {
  DomainSpec domain;
  int family_t = 0;
  double kappa = 0.0;
  GeneratorSpec drift;

  /// Drift blocks are sized for the reduced domain. d defaults to zero for
  /// type I (traces are balanced automatically) and must be absent otherwise.
  static ModelSpec create(const DomainSpec& domain, int family_t, double kappa,
                          Matrix a, std::optional<Matrix> d = std::nullopt);

  DomainSpec effective_domain() const;
  GroupSpec effective_group() const;
};

struct EnsembleState {
  DomainSpec domain;
  std::vector<Matrix> z;
  double time = 0.0;

  int size() const { return static_cast<int>(z.size()); }
};

struct MeanField {
  Matrix z;
};

/// Kappa-scaled ensemble average, summed in index order.
MeanField mean_field(const EnsembleState& ens, double kappa);

/// Coupled Riccati right-hand sides: for each K,
///   dz^K/dt = a z^K - z^K d + (kappa/N) sum_J (z^J - z^K (z^J)^dagger z^K),
/// evaluated as the vector field with b set to the mean field.
std::vector<Matrix> coupled_rhs(const ModelSpec& model, const EnsembleState& ens,
                                int workers = 1);

/// Classic phase model: d theta^I/dt = omega + (2 kappa / N) sum_J
/// sin(theta^J - theta^I).
std::vector<double> classic_kuramoto_rhs(const std::vector<double>& phases,
                                         double omega, double kappa);

/// Scalar frequency of the reduced (1,1) model: the drift a z - z d restricted
/// to the circle advances the phase at Im(a - d).
double reduced_frequency(const ModelSpec& model);

/// Right-hand side of the lifted flow dh/dt = x h with
/// x = [[a, Z], [Z^dagger, d]].
Matrix group_lift_rhs(const ModelSpec& model, const GroupElement& h,
                      const MeanField& field);

/// Moebius transport of every oscillator by a fixed group element.
EnsembleState transport(const GroupElement& h, const EnsembleState& initial,
                        double tol = 1e-12);

/// Holomorphic disc flow b + 2 a z - conj(b) z^2 (|z| < 1, a imaginary).
Complex disc_flow_rhs(Complex z, Complex a, Complex b);

/// Phase velocity of the same flow restricted to the unit circle.
double circle_flow_rhs(Complex z, Complex a, Complex b);

}  // namespace bsdk
