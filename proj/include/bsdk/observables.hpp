#pragma once

#include <optional>
#include <vector>

#include "bsdk/flows.hpp"

namespace bsdk {

struct ObservableRecord {
  double time = 0.0;
  double r = 0.0;                 // order parameter in [0, 1]
  double spread = 0.0;            // max pairwise Frobenius distance
  std::vector<int> ranks;         // boundary rank per oscillator (-1: unresolved)
  double mean_field_norm = 0.0;   // ||Z||_F of the kappa-scaled mean field
  double max_tangency = 0.0;      // max Bergman-Shilov deviation
};

/// Frobenius rank of the Bergman-Shilov boundary of the ensemble's domain:
/// the squared Frobenius norm of any of its points.
int bs_rank(const DomainSpec& spec);

/// r = ||(1/N) sum z^J||_F / sqrt(bs_rank). Checks that all oscillators lie
/// on a common boundary component (MixedComponents otherwise).
double order_parameter(const EnsembleState& ens, double tol = 1e-8);

/// Same value without the component check (monitoring use).
double order_parameter_value(const EnsembleState& ens);

double pairwise_spread(const EnsembleState& ens);

struct ChainEntry {
  BoundaryClass rank;
  std::optional<DomainSpec> sub;  // nullopt when the component is a point
  bool on_bs = false;
};

/// Per-oscillator boundary classification realizing the family chain.
std::vector<ChainEntry> chain_report(const DomainSpec& spec,
                                     const EnsembleState& ens,
                                     double tol = 1e-8);

/// Non-throwing boundary rank for monitoring: eigenvalues below tol count as
/// zero; returns -1 when the type II count is odd.
int monitor_rank(const DomainSpec& spec, const Matrix& z, double tol);

/// Full monitoring record for one ensemble snapshot.
ObservableRecord observe(const EnsembleState& ens, double kappa, double rank_tol);

}  // namespace bsdk
