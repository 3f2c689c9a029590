#pragma once

#include "bsdk/observables.hpp"

namespace bsdk {

enum class Method { RK4, RK45 };

struct Tolerances {
  double rank = 1e-8;              // monitor band for boundary ranks
  double divergence_factor = 10.0; // guard at factor * sqrt(n) Frobenius norm
  double group_membership = 1e-8;  // allowed drift of the lifted element
  double rk45_abs = 1e-10;         // absolute error target per step
  double retraction = 1e-9;        // rank tolerance inside the polar factor
};

struct IntegrationConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Method method = Method::RK4;
  int retract_every = 0;   // 0 = never
  int monitor_every = 1;
  Tolerances tolerances;
  int workers = 1;
  bool keep_snapshots = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<EnsembleState> snapshots;  // empty when keep_snapshots is false
  std::vector<ObservableRecord> monitors;
};

/// Runge-Kutta advance of the coupled system with optional per-interval
/// polar retraction of boundary ensembles. Deterministic in all inputs.
Trajectory integrate_ensemble(const ModelSpec& model, const EnsembleState& init,
                              const IntegrationConfig& cfg);

struct LiftResult {
  std::vector<GroupElement> h_path;  // at monitor times
  Trajectory trajectory;             // the transported ensemble
};

/// Co-integration of dh/dt = x(Z(t)) h from the identity, where Z(t) is the
/// mean field of the transported initial ensemble.
LiftResult integrate_lift(const ModelSpec& model, const EnsembleState& init,
                          const IntegrationConfig& cfg);

/// Nearest structured Bergman-Shilov point per oscillator: types II/III are
/// (anti)symmetrized before and after the polar factor.
EnsembleState retract_state(const DomainSpec& spec, const EnsembleState& ens,
                            double tol = 1e-9);

/// Single-oscillator retraction used by the integrator.
Matrix retract_point(const DomainSpec& spec, const Matrix& z, double tol = 1e-9);

}  // namespace bsdk
