#include "bsdk/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace bsdk {

namespace {

using State = std::vector<Matrix>;

State combine(const State& base, double h, const State& slope) {
  State out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = base[i] + h * slope[i];
  }
  return out;
}

void divergence_guard(const State& z, const DomainSpec& spec, double factor,
                      double time) {
  const double limit = factor * std::sqrt(static_cast<double>(spec.n));
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!z[k].allFinite() || z[k].norm() > limit) {
      std::ostringstream msg;
      msg << "oscillator " << k << " exceeded norm " << limit << " at t=" << time;
      fail(ErrorKind::DivergenceDetected, msg.str());
    }
  }
}

struct Recorder {
  const ModelSpec& model;
  const IntegrationConfig& cfg;
  Trajectory trajectory;

  void record(const EnsembleState& ens) {
    trajectory.times.push_back(ens.time);
    trajectory.monitors.push_back(observe(ens, model.kappa, cfg.tolerances.rank));
    if (cfg.keep_snapshots) trajectory.snapshots.push_back(ens);
  }
};

void validate_config(const IntegrationConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) {
    fail(ErrorKind::DomainViolation, "dt and t_end must be positive");
  }
  if (cfg.retract_every < 0 || cfg.monitor_every < 1) {
    fail(ErrorKind::DomainViolation,
         "retract_every must be >= 0 and monitor_every >= 1");
  }
}

long step_count(const IntegrationConfig& cfg) {
  const long steps = std::lround(cfg.t_end / cfg.dt);
  return steps > 0 ? steps : 1;
}

// Dormand-Prince 5(4) tableau.
constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kDpB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                             -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kDpB4[7] = {5179.0 / 57600,  0.0,    7571.0 / 16695, 393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

Matrix retract_point(const DomainSpec& spec, const Matrix& z, double tol) {
  Matrix structured = z;
  if (spec.kind == DomainKind::TypeII) {
    structured = 0.5 * (z - z.transpose());
  } else if (spec.kind == DomainKind::TypeIII) {
    structured = 0.5 * (z + z.transpose());
  }
  Matrix w = polar_unitary_factor(structured, tol);
  if (spec.kind == DomainKind::TypeII) {
    const Matrix wt = w.transpose();
    w = 0.5 * (w - wt);
  } else if (spec.kind == DomainKind::TypeIII) {
    const Matrix wt = w.transpose();
    w = 0.5 * (w + wt);
  }
  const double distance = (z - w).norm();
  if (distance > 0.1) {
    std::ostringstream msg;
    msg << "distance " << distance << " to the boundary exceeds 0.1";
    fail(ErrorKind::TooFarToRetract, msg.str());
  }
  return w;
}

EnsembleState retract_state(const DomainSpec& spec, const EnsembleState& ens,
                            double tol) {
  EnsembleState out = ens;
  for (Matrix& z : out.z) {
    z = retract_point(spec, z, tol);
  }
  return out;
}

Trajectory integrate_ensemble(const ModelSpec& model, const EnsembleState& init,
                              const IntegrationConfig& cfg) {
  validate_config(cfg);
  const DomainSpec spec = model.effective_domain();
  Recorder recorder{model, cfg, {}};

  EnsembleState ens = init;
  ens.domain = spec;
  recorder.record(ens);

  auto rhs = [&](const State& z) {
    EnsembleState stage;
    stage.domain = spec;
    stage.z = z;
    return coupled_rhs(model, stage, cfg.workers);
  };

  if (cfg.method == Method::RK4) {
    const long steps = step_count(cfg);
    const double dt = cfg.dt;
    for (long step = 1; step <= steps; ++step) {
      const State k1 = rhs(ens.z);
      const State k2 = rhs(combine(ens.z, 0.5 * dt, k1));
      const State k3 = rhs(combine(ens.z, 0.5 * dt, k2));
      const State k4 = rhs(combine(ens.z, dt, k3));
      for (std::size_t i = 0; i < ens.z.size(); ++i) {
        ens.z[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      ens.time = static_cast<double>(step) * dt;
      divergence_guard(ens.z, spec, cfg.tolerances.divergence_factor, ens.time);
      if (cfg.retract_every > 0 && step % cfg.retract_every == 0) {
        for (Matrix& z : ens.z) z = retract_point(spec, z, cfg.tolerances.retraction);
      }
      if (step % cfg.monitor_every == 0 || step == steps) {
        recorder.record(ens);
      }
    }
    return std::move(recorder.trajectory);
  }

  // Adaptive Dormand-Prince 5(4).
  double t = 0.0;
  double dt = cfg.dt;
  long accepted = 0;
  while (t < cfg.t_end - 1e-14 * cfg.t_end) {
    dt = std::min(dt, cfg.t_end - t);
    State k[7];
    k[0] = rhs(ens.z);
    for (int stage = 1; stage < 7; ++stage) {
      State arg = ens.z;
      for (int p = 0; p < stage; ++p) {
        if (kDpA[stage][p] != 0.0) {
          for (std::size_t i = 0; i < arg.size(); ++i) {
            arg[i] += dt * kDpA[stage][p] * k[p][i];
          }
        }
      }
      k[stage] = rhs(arg);
    }
    State next = ens.z;
    double error = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      Matrix delta = Matrix::Zero(next[i].rows(), next[i].cols());
      Matrix err = delta;
      for (int stage = 0; stage < 7; ++stage) {
        delta += dt * kDpB5[stage] * k[stage][i];
        err += dt * (kDpB5[stage] - kDpB4[stage]) * k[stage][i];
      }
      next[i] += delta;
      error = std::max(error, err.norm());
    }
    const double atol = cfg.tolerances.rk45_abs;
    if (error <= atol || dt <= 1e-14) {
      ens.z = std::move(next);
      t += dt;
      ens.time = t;
      ++accepted;
      divergence_guard(ens.z, spec, cfg.tolerances.divergence_factor, ens.time);
      if (cfg.retract_every > 0 && accepted % cfg.retract_every == 0) {
        for (Matrix& z : ens.z) z = retract_point(spec, z, cfg.tolerances.retraction);
      }
      if (accepted % cfg.monitor_every == 0 || t >= cfg.t_end - 1e-14 * cfg.t_end) {
        recorder.record(ens);
      }
    }
    const double shrink =
        error > 0.0 ? 0.9 * std::pow(atol / error, 0.2) : 5.0;
    dt *= std::min(5.0, std::max(0.2, shrink));
  }
  return std::move(recorder.trajectory);
}

LiftResult integrate_lift(const ModelSpec& model, const EnsembleState& init,
                          const IntegrationConfig& cfg) {
  validate_config(cfg);
  const DomainSpec spec = model.effective_domain();
  const GroupSpec group = model.effective_group();
  if (cfg.method != Method::RK4) {
    fail(ErrorKind::DomainViolation, "the lifted flow is integrated with RK4");
  }

  EnsembleState base = init;
  base.domain = spec;

  auto transported = [&](const Matrix& h, double time) {
    EnsembleState out;
    out.domain = spec;
    out.time = time;
    out.z.reserve(base.z.size());
    for (const Matrix& z0 : base.z) {
      out.z.push_back(mobius_raw(group, h, z0));
    }
    return out;
  };

  auto rhs = [&](const Matrix& h) {
    const MeanField field = mean_field(transported(h, 0.0), model.kappa);
    const GeneratorSpec gen = model.drift.with_b(field.z);
    return Matrix(lie_element(group, gen) * h);
  };

  LiftResult result;
  Recorder recorder{model, cfg, {}};

  Matrix h = Matrix::Identity(group.order(), group.order());
  auto record = [&](const Matrix& hm, double time) {
    const double dev = membership_deviation(group, hm);
    if (dev > cfg.tolerances.group_membership) {
      std::ostringstream msg;
      msg << "lifted element drifted off the group by " << dev << " at t=" << time;
      fail(ErrorKind::ConstraintViolation, msg.str());
    }
    result.h_path.push_back(
        GroupElement::create(group, hm, cfg.tolerances.group_membership));
    recorder.record(transported(hm, time));
  };

  record(h, 0.0);
  const long steps = step_count(cfg);
  const double dt = cfg.dt;
  for (long step = 1; step <= steps; ++step) {
    const Matrix k1 = rhs(h);
    const Matrix k2 = rhs(h + 0.5 * dt * k1);
    const Matrix k3 = rhs(h + 0.5 * dt * k2);
    const Matrix k4 = rhs(h + dt * k3);
    h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double time = static_cast<double>(step) * dt;
    if (!h.allFinite()) {
      fail(ErrorKind::DivergenceDetected, "lifted element is non-finite");
    }
    if (step % cfg.monitor_every == 0 || step == steps) {
      record(h, time);
    }
  }
  result.trajectory = std::move(recorder.trajectory);
  return result;
}

}  // namespace bsdk
