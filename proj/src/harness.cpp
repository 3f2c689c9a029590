#include "bsdk/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

namespace bsdk {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ScenarioError(path + "." + key, "missing field");
  }
  return j.at(key);
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ScenarioError(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioError(path, "expected a string");
  return j.get<std::string>();
}

Complex complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ScenarioError(path, "expected a complex number as [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(Complex value) {
  return json::array({value.real(), value.imag()});
}

}  // namespace

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ScenarioError(path, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw ScenarioError(path + "[0]", "expected a non-empty row");
  }
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols) {
      throw ScenarioError(path + "[" + std::to_string(i) + "]",
                          "rows must have equal length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(row[k], path + "[" + std::to_string(i) + "][" +
                                        std::to_string(k) + "]");
    }
  }
  if (!all_finite(m)) throw ScenarioError(path, "entries must be finite");
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

DomainSpec parse_domain(const json& j, const std::string& path) {
  const std::string kind = as_string(require_field(j, "kind", path), path + ".kind");
  const int m = as_int(require_field(j, "m", path), path + ".m");
  const int n = as_int(require_field(j, "n", path), path + ".n");
  try {
    if (kind == "I") return DomainSpec::type_i(m, n);
    if (kind == "II") {
      if (m != n) throw ScenarioError(path + ".m", "type II requires m == n");
      return DomainSpec::type_ii(n);
    }
    if (kind == "III") {
      if (m != n) throw ScenarioError(path + ".m", "type III requires m == n");
      return DomainSpec::type_iii(n);
    }
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
  throw ScenarioError(path + ".kind", "expected one of \"I\", \"II\", \"III\"");
}

ModelSpec parse_model(const json& j, const std::string& path) {
  const DomainSpec domain = parse_domain(require_field(j, "domain", path), path + ".domain");
  const int family_t = j.contains("family_t")
                           ? as_int(j.at("family_t"), path + ".family_t")
                           : 0;
  const double kappa = as_double(require_field(j, "kappa", path), path + ".kappa");

  const auto reduced = reduced_domain(domain, family_t);
  if (!reduced) {
    throw ScenarioError(path + ".family_t", "family index leaves no domain");
  }
  Matrix a = Matrix::Zero(reduced->m, reduced->m);
  std::optional<Matrix> d;
  if (j.contains("drift")) {
    const json& drift = j.at("drift");
    if (drift.contains("a")) {
      a = matrix_from_json(drift.at("a"), path + ".drift.a");
    }
    if (drift.contains("d")) {
      d = matrix_from_json(drift.at("d"), path + ".drift.d");
    }
  }
  try {
    return ModelSpec::create(domain, family_t, kappa, std::move(a), std::move(d));
  } catch (const Error& e) {
    throw ScenarioError(path + ".drift", e.what());
  }
}

json serialize_model(const ModelSpec& model) {
  json j;
  j["domain"] = {{"kind", to_string(model.domain.kind)},
                 {"m", model.domain.m},
                 {"n", model.domain.n}};
  j["family_t"] = model.family_t;
  j["kappa"] = model.kappa;
  json drift;
  drift["a"] = matrix_to_json(model.drift.a());
  if (model.domain.kind == DomainKind::TypeI) {
    drift["d"] = matrix_to_json(model.drift.d());
  }
  j["drift"] = std::move(drift);
  return j;
}

InitSpec parse_init(const json& j, const std::string& path) {
  InitSpec init;
  const std::string kind = as_string(require_field(j, "kind", path), path + ".kind");
  if (kind == "sample_bs") {
    init.kind = InitKind::SampleBs;
  } else if (kind == "sample_interior") {
    init.kind = InitKind::SampleInterior;
  } else if (kind == "explicit") {
    init.kind = InitKind::Explicit;
  } else {
    throw ScenarioError(path + ".kind",
                        "expected \"sample_bs\", \"sample_interior\" or \"explicit\"");
  }
  if (init.kind == InitKind::Explicit) {
    const json& states = require_field(j, "states", path);
    if (!states.is_array() || states.empty()) {
      throw ScenarioError(path + ".states", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      init.states.push_back(
          matrix_from_json(states[i], path + ".states[" + std::to_string(i) + "]"));
    }
  } else {
    init.seed = static_cast<std::uint64_t>(
        as_int(require_field(j, "seed", path), path + ".seed"));
  }
  return init;
}

IntegrationConfig parse_integration(const json& j, const std::string& path) {
  IntegrationConfig cfg;
  cfg.dt = as_double(require_field(j, "dt", path), path + ".dt");
  cfg.t_end = as_double(require_field(j, "t_end", path), path + ".t_end");
  if (!(cfg.dt > 0.0)) throw ScenarioError(path + ".dt", "must be positive");
  if (!(cfg.t_end > 0.0)) throw ScenarioError(path + ".t_end", "must be positive");
  if (j.contains("method")) {
    const std::string method = as_string(j.at("method"), path + ".method");
    if (method == "rk4") {
      cfg.method = Method::RK4;
    } else if (method == "rk45") {
      cfg.method = Method::RK45;
    } else {
      throw ScenarioError(path + ".method", "expected \"rk4\" or \"rk45\"");
    }
  }
  if (j.contains("retract_every")) {
    cfg.retract_every = as_int(j.at("retract_every"), path + ".retract_every");
    if (cfg.retract_every < 0) {
      throw ScenarioError(path + ".retract_every", "must be >= 0");
    }
  }
  if (j.contains("monitor_every")) {
    cfg.monitor_every = as_int(j.at("monitor_every"), path + ".monitor_every");
    if (cfg.monitor_every < 1) {
      throw ScenarioError(path + ".monitor_every", "must be >= 1");
    }
  }
  if (j.contains("rk45_abs_tol")) {
    cfg.tolerances.rk45_abs = as_double(j.at("rk45_abs_tol"), path + ".rk45_abs_tol");
  }
  if (j.contains("rank_tol")) {
    cfg.tolerances.rank = as_double(j.at("rank_tol"), path + ".rank_tol");
  }
  if (j.contains("divergence_factor")) {
    cfg.tolerances.divergence_factor =
        as_double(j.at("divergence_factor"), path + ".divergence_factor");
  }
  if (j.contains("retraction_tol")) {
    cfg.tolerances.retraction =
        as_double(j.at("retraction_tol"), path + ".retraction_tol");
  }
  return cfg;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  Scenario s;
  s.version = as_int(require_field(j, "version", "scenario"), "version");
  if (s.version != 1) throw ScenarioError("version", "expected version 1");
  s.model = parse_model(require_field(j, "model", "scenario"), "model");
  s.n_oscillators = as_int(require_field(j, "N", "scenario"), "N");
  if (s.n_oscillators < 1) throw ScenarioError("N", "must be >= 1");
  s.init = parse_init(require_field(j, "init", "scenario"), "init");
  s.integration = parse_integration(require_field(j, "integration", "scenario"),
                                    "integration");
  if (j.contains("output")) {
    const json& output = j.at("output");
    if (output.contains("csv")) s.output.csv = as_string(output.at("csv"), "output.csv");
    if (output.contains("jsonl")) {
      s.output.jsonl = as_string(output.at("jsonl"), "output.jsonl");
    }
  }
  if (j.contains("check")) {
    const json& check = j.at("check");
    if (check.contains("tolerance")) {
      s.check.tolerance = as_double(check.at("tolerance"), "check.tolerance");
    }
    if (check.contains("transports")) {
      s.check.transports = as_int(check.at("transports"), "check.transports");
      if (s.check.transports < 1) {
        throw ScenarioError("check.transports", "must be >= 1");
      }
    }
  }

  // Cross-field consistency.
  const DomainSpec effective = s.model.effective_domain();
  if (s.init.kind == InitKind::Explicit) {
    if (static_cast<int>(s.init.states.size()) != s.n_oscillators) {
      throw ScenarioError("init.states", "count does not match N");
    }
    for (std::size_t i = 0; i < s.init.states.size(); ++i) {
      const std::string path = "init.states[" + std::to_string(i) + "]";
      try {
        if (!structure_check(effective, s.init.states[i], 1e-9)) {
          throw ScenarioError(path, "violates the domain symmetry");
        }
      } catch (const Error& e) {
        throw ScenarioError(path, e.what());
      }
    }
  }
  return s;
}

json serialize_scenario(const Scenario& s) {
  json j;
  j["version"] = s.version;
  j["model"] = serialize_model(s.model);
  j["N"] = s.n_oscillators;
  json init;
  switch (s.init.kind) {
    case InitKind::SampleBs: init["kind"] = "sample_bs"; break;
    case InitKind::SampleInterior: init["kind"] = "sample_interior"; break;
    case InitKind::Explicit: init["kind"] = "explicit"; break;
  }
  if (s.init.kind == InitKind::Explicit) {
    json states = json::array();
    for (const Matrix& z : s.init.states) states.push_back(matrix_to_json(z));
    init["states"] = std::move(states);
  } else {
    init["seed"] = s.init.seed;
  }
  j["init"] = std::move(init);
  json integration;
  integration["dt"] = s.integration.dt;
  integration["t_end"] = s.integration.t_end;
  integration["method"] = s.integration.method == Method::RK4 ? "rk4" : "rk45";
  integration["retract_every"] = s.integration.retract_every;
  integration["monitor_every"] = s.integration.monitor_every;
  integration["rk45_abs_tol"] = s.integration.tolerances.rk45_abs;
  integration["rank_tol"] = s.integration.tolerances.rank;
  integration["divergence_factor"] = s.integration.tolerances.divergence_factor;
  integration["retraction_tol"] = s.integration.tolerances.retraction;
  j["integration"] = std::move(integration);
  json output;
  if (!s.output.csv.empty()) output["csv"] = s.output.csv;
  if (!s.output.jsonl.empty()) output["jsonl"] = s.output.jsonl;
  j["output"] = std::move(output);
  j["check"] = {{"tolerance", s.check.tolerance}, {"transports", s.check.transports}};
  return j;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("file", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ScenarioError("file", std::string("JSON parse error: ") + e.what());
  }
  return parse_scenario(j);
}

EnsembleState build_initial_state(const Scenario& s) {
  EnsembleState ens;
  ens.domain = s.model.effective_domain();
  ens.time = 0.0;
  ens.z.reserve(static_cast<std::size_t>(s.n_oscillators));
  for (int k = 0; k < s.n_oscillators; ++k) {
    switch (s.init.kind) {
      case InitKind::SampleBs:
        ens.z.push_back(sample_bs_boundary(ens.domain,
                                           s.init.seed + static_cast<std::uint64_t>(k)));
        break;
      case InitKind::SampleInterior:
        ens.z.push_back(sample_interior(ens.domain,
                                        s.init.seed + static_cast<std::uint64_t>(k)));
        break;
      case InitKind::Explicit:
        ens.z.push_back(s.init.states[static_cast<std::size_t>(k)]);
        break;
    }
  }
  return ens;
}

namespace {

std::string format_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_csv(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("output.csv", "cannot write " + path);
  out << "time,r,spread,mean_field_norm,max_tangency_drift\n";
  for (const ObservableRecord& rec : trajectory.monitors) {
    out << format_value(rec.time) << ',' << format_value(rec.r) << ','
        << format_value(rec.spread) << ',' << format_value(rec.mean_field_norm)
        << ',' << format_value(rec.max_tangency) << '\n';
  }
}

void write_jsonl(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("output.jsonl", "cannot write " + path);
  for (const EnsembleState& ens : trajectory.snapshots) {
    json line;
    line["time"] = ens.time;
    json oscillators = json::array();
    for (const Matrix& z : ens.z) oscillators.push_back(matrix_to_json(z));
    line["oscillators"] = std::move(oscillators);
    out << line.dump() << '\n';
  }
}

void write_gnuplot_stub(const std::string& csv_path) {
  const std::string path = csv_path + ".gnuplot";
  std::ofstream out(path);
  if (!out) throw ScenarioError("output.csv", "cannot write " + path);
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'time'\n"
      << "plot '" << csv_path << "' using 1:2 with lines title 'r', \\\n"
      << "     '" << csv_path << "' using 1:3 with lines title 'spread'\n";
}

void refuse_existing(const std::string& path, bool force, const char* field) {
  if (!force && !path.empty() && std::filesystem::exists(path)) {
    throw ScenarioError(field, path + " exists (use --force to overwrite)");
  }
}

}  // namespace

int worker_count_from_env() {
  const char* raw = std::getenv("BSD_KURAMOTO_THREADS");
  int requested = 0;
  if (raw != nullptr) {
    try {
      requested = std::stoi(raw);
    } catch (...) {
      requested = 0;
    }
  }
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return requested;
}

void run_scenario(const Scenario& s, const RunOptions& options, std::ostream& log) {
  if (s.output.csv.empty()) {
    throw ScenarioError("output.csv", "missing output path");
  }
  refuse_existing(s.output.csv, options.force, "output.csv");
  refuse_existing(s.output.jsonl, options.force, "output.jsonl");

  IntegrationConfig cfg = s.integration;
  cfg.workers = options.workers > 0 ? options.workers : worker_count_from_env();
  cfg.keep_snapshots = !s.output.jsonl.empty();

  const EnsembleState init = build_initial_state(s);
  const Trajectory trajectory = integrate_ensemble(s.model, init, cfg);

  write_csv(s.output.csv, trajectory);
  if (!s.output.jsonl.empty()) write_jsonl(s.output.jsonl, trajectory);
  if (options.gnuplot_stub) write_gnuplot_stub(s.output.csv);

  const ObservableRecord& last = trajectory.monitors.back();
  log << "wrote " << s.output.csv << " (" << trajectory.monitors.size()
      << " rows); final r=" << last.r << " spread=" << last.spread << "\n";
}

namespace {

double wrapped_phase_distance(double a, double b) {
  return std::abs(std::atan2(std::sin(a - b), std::cos(a - b)));
}

IntegrationConfig check_config(const Scenario& s) {
  IntegrationConfig cfg = s.integration;
  cfg.workers = worker_count_from_env();
  cfg.keep_snapshots = true;
  return cfg;
}

}  // namespace

CheckResult check_lift(const Scenario& s) {
  const IntegrationConfig cfg = check_config(s);
  const EnsembleState init = build_initial_state(s);
  const Trajectory direct = integrate_ensemble(s.model, init, cfg);
  const LiftResult lifted = integrate_lift(s.model, init, cfg);

  CheckResult result;
  std::ostringstream detail;
  for (std::size_t i = 0; i < direct.snapshots.size(); ++i) {
    const EnsembleState& a = direct.snapshots[i];
    const EnsembleState& b = lifted.trajectory.snapshots[i];
    for (int k = 0; k < a.size(); ++k) {
      const double diff =
          (a.z[static_cast<std::size_t>(k)] - b.z[static_cast<std::size_t>(k)]).norm();
      if (diff > result.max_discrepancy) {
        result.max_discrepancy = diff;
        detail.str("");
        detail << "worst at oscillator " << k << ", t=" << a.time;
      }
    }
  }
  result.ok = result.max_discrepancy <= s.check.tolerance;
  result.detail = detail.str();
  return result;
}

CheckResult check_reduction(const Scenario& s) {
  const DomainSpec effective = s.model.effective_domain();
  if (effective.kind != DomainKind::TypeI || effective.m != 1 || effective.n != 1) {
    throw ScenarioError("model.domain", "reduction check requires a (1,1) model");
  }
  const IntegrationConfig cfg = check_config(s);
  const EnsembleState init = build_initial_state(s);
  for (int k = 0; k < init.size(); ++k) {
    if (std::abs(std::abs(init.z[static_cast<std::size_t>(k)](0, 0)) - 1.0) > 1e-9) {
      throw ScenarioError("init", "reduction check requires oscillators on the circle");
    }
  }

  const Trajectory direct = integrate_ensemble(s.model, init, cfg);

  // Independent scalar integration of the classic phase equations.
  const double omega = reduced_frequency(s.model);
  std::vector<double> phases(init.z.size());
  for (std::size_t k = 0; k < phases.size(); ++k) {
    phases[k] = std::arg(init.z[k](0, 0));
  }
  const long steps = std::lround(cfg.t_end / cfg.dt);
  CheckResult result;
  std::ostringstream detail;
  std::size_t monitor_index = 1;
  auto compare = [&](double time) {
    if (monitor_index >= direct.snapshots.size()) return;
    const EnsembleState& snap = direct.snapshots[monitor_index];
    if (std::abs(snap.time - time) > 1e-12 * std::max(1.0, time)) return;
    for (std::size_t k = 0; k < phases.size(); ++k) {
      const double diff =
          wrapped_phase_distance(std::arg(snap.z[k](0, 0)), phases[k]);
      if (diff > result.max_discrepancy) {
        result.max_discrepancy = diff;
        detail.str("");
        detail << "worst at oscillator " << k << ", t=" << time;
      }
    }
    ++monitor_index;
  };
  for (long step = 1; step <= steps; ++step) {
    const auto k1 = classic_kuramoto_rhs(phases, omega, s.model.kappa);
    std::vector<double> tmp(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) tmp[i] = phases[i] + 0.5 * cfg.dt * k1[i];
    const auto k2 = classic_kuramoto_rhs(tmp, omega, s.model.kappa);
    for (std::size_t i = 0; i < phases.size(); ++i) tmp[i] = phases[i] + 0.5 * cfg.dt * k2[i];
    const auto k3 = classic_kuramoto_rhs(tmp, omega, s.model.kappa);
    for (std::size_t i = 0; i < phases.size(); ++i) tmp[i] = phases[i] + cfg.dt * k3[i];
    const auto k4 = classic_kuramoto_rhs(tmp, omega, s.model.kappa);
    for (std::size_t i = 0; i < phases.size(); ++i) {
      phases[i] += (cfg.dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (step % cfg.monitor_every == 0 || step == steps) {
      compare(static_cast<double>(step) * cfg.dt);
    }
  }
  result.ok = result.max_discrepancy <= s.check.tolerance;
  result.detail = detail.str();
  return result;
}

CheckResult check_rank(const Scenario& s) {
  const DomainSpec effective = s.model.effective_domain();
  const GroupSpec group = GroupSpec::for_domain(effective);
  const EnsembleState init = build_initial_state(s);

  std::vector<int> before(init.z.size());
  for (std::size_t k = 0; k < init.z.size(); ++k) {
    before[k] = boundary_rank(effective, init.z[k], 1e-8).t;
  }

  CheckResult result;
  std::ostringstream detail;
  int violations = 0;
  for (int trial = 0; trial < s.check.transports; ++trial) {
    const GroupElement h =
        random_element(group, static_cast<std::uint64_t>(trial) + 1, 0.4);
    for (std::size_t k = 0; k < init.z.size(); ++k) {
      const Matrix moved = mobius(h, init.z[k]);
      const int after = boundary_rank(effective, moved, 1e-8).t;
      const double diff = std::abs(after - before[k]);
      if (diff > result.max_discrepancy) result.max_discrepancy = diff;
      if (after != before[k]) {
        ++violations;
        detail.str("");
        detail << "rank changed " << before[k] << " -> " << after
               << " at oscillator " << k << ", transport " << trial;
      }
    }
  }
  result.ok = violations == 0;
  if (violations > 0) {
    detail << " (" << violations << " violations)";
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_tangency(const Scenario& s) {
  const IntegrationConfig cfg = check_config(s);
  const EnsembleState init = build_initial_state(s);
  const Trajectory trajectory = integrate_ensemble(s.model, init, cfg);

  CheckResult result;
  std::ostringstream detail;
  for (const ObservableRecord& rec : trajectory.monitors) {
    if (rec.max_tangency > result.max_discrepancy) {
      result.max_discrepancy = rec.max_tangency;
      detail.str("");
      detail << "worst at t=" << rec.time;
    }
  }
  result.ok = result.max_discrepancy <= s.check.tolerance;
  result.detail = detail.str();
  return result;
}

namespace {

std::string bs_description(const DomainSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case DomainKind::TypeI:
      if (spec.n == 1) {
        if (spec.m == 1) {
          out << "circle S^1";
        } else {
          out << "sphere S^" << (2 * spec.m - 1);
        }
      } else if (spec.m == spec.n) {
        out << "unitary group U(" << spec.n << ")";
      } else {
        out << "Stiefel manifold St(" << spec.m << "," << spec.n << ")";
      }
      break;
    case DomainKind::TypeII:
      out << "antisymmetric unitary matrices U(" << spec.n << ")/Sp("
          << spec.n / 2 << ")";
      if (spec.n == 2) out << " ~ S^1";
      break;
    case DomainKind::TypeIII:
      out << "symmetric unitary matrices U(" << spec.n << ")/O(" << spec.n << ")";
      if (spec.n == 1) out << " ~ S^1";
      break;
  }
  return out.str();
}

std::string group_name(const GroupSpec& g) {
  std::ostringstream out;
  switch (g.kind) {
    case GroupKind::SUmn: out << "SU(" << g.m << "," << g.n << ")"; break;
    case GroupKind::SOstar2n: out << "SO*(" << 2 * g.n << ")"; break;
    case GroupKind::SpnR: out << "Sp(" << g.n << ",R)"; break;
  }
  return out.str();
}

std::string family_label(const DomainSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case DomainKind::TypeI:
      out << "KM_{" << spec.m << "," << spec.n << "}(I)";
      break;
    case DomainKind::TypeII:
      out << "KM_" << spec.n << "(II)";
      break;
    case DomainKind::TypeIII:
      out << "KM_" << spec.n << "(III)";
      break;
  }
  return out.str();
}

}  // namespace

std::string info_text(const DomainSpec& spec) {
  const Dims d = dims(spec);
  const GroupSpec group = GroupSpec::for_domain(spec);
  std::ostringstream out;
  out << "domain: type " << to_string(spec.kind) << ", m=" << spec.m
      << ", n=" << spec.n << "\n";
  out << "group: " << group_name(group) << "\n";
  out << "domain dim (real): " << d.domain_real << "\n";
  out << "BS boundary: " << bs_description(spec) << ", dim (real) " << d.bs_real
      << "\n";
  out << "family chain:\n";
  for (int t = 0;; ++t) {
    const auto sub = reduced_domain(spec, t);
    if (!sub) break;
    const Dims sub_dims = dims(*sub);
    out << "  " << family_label(*sub) << " on " << bs_description(*sub)
        << ", BS dim " << sub_dims.bs_real << "\n";
  }
  if (spec.kind == DomainKind::TypeII && spec.n % 2 == 1) {
    out << "  (chain ends at the type II n=1 domain, a point)\n";
  }
  return out.str();
}

namespace {

DomainSpec domain_from_cli(const std::string& kind, int m, int n) {
  if (kind == "I") return DomainSpec::type_i(m, n);
  if (kind == "II") {
    if (m != n) fail(ErrorKind::DomainViolation, "type II requires m == n");
    return DomainSpec::type_ii(n);
  }
  if (kind == "III") {
    if (m != n) fail(ErrorKind::DomainViolation, "type III requires m == n");
    return DomainSpec::type_iii(n);
  }
  fail(ErrorKind::DomainViolation, "kind must be I, II or III");
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Kuramoto-type oscillator ensembles on bounded symmetric domains"};
  app.require_subcommand(1);

  std::string scenario_path;
  RunOptions options;
  auto* run_cmd = app.add_subcommand("run", "integrate a scenario and write outputs");
  run_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run_cmd->add_flag("--force", options.force, "overwrite existing outputs");
  run_cmd->add_flag("--gnuplot-stub", options.gnuplot_stub,
                    "emit a companion gnuplot script");

  std::string check_kind;
  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "run an oracle comparison");
  check_cmd->add_option("kind", check_kind, "lift | reduction | rank | tangency")
      ->required();
  check_cmd->add_option("scenario", check_path, "scenario JSON file")->required();

  std::string info_kind;
  int info_m = 0, info_n = 0;
  auto* info_cmd = app.add_subcommand("info", "describe a domain and its family chain");
  info_cmd->add_option("kind", info_kind, "I | II | III")->required();
  info_cmd->add_option("m", info_m, "rows")->required();
  info_cmd->add_option("n", info_n, "columns")->required();

  std::string sample_kind;
  int sample_m = 0, sample_n = 0;
  std::uint64_t sample_seed = 0;
  bool sample_boundary = false;
  bool sample_interior_flag = false;
  auto* sample_cmd = app.add_subcommand("sample", "print a sampled point as JSON");
  sample_cmd->add_option("kind", sample_kind, "I | II | III")->required();
  sample_cmd->add_option("m", sample_m, "rows")->required();
  sample_cmd->add_option("n", sample_n, "columns")->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed")->required();
  sample_cmd->add_flag("--boundary", sample_boundary, "Bergman-Shilov boundary point");
  sample_cmd->add_flag("--interior", sample_interior_flag, "interior point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      const Scenario s = load_scenario_file(scenario_path);
      run_scenario(s, options, std::cout);
      return 0;
    }
    if (check_cmd->parsed()) {
      const Scenario s = load_scenario_file(check_path);
      CheckResult result;
      if (check_kind == "lift") {
        result = check_lift(s);
      } else if (check_kind == "reduction") {
        result = check_reduction(s);
      } else if (check_kind == "rank") {
        result = check_rank(s);
      } else if (check_kind == "tangency") {
        result = check_tangency(s);
      } else {
        std::cerr << "check kind must be lift, reduction, rank or tangency\n";
        return 2;
      }
      std::cout << "check " << check_kind
                << ": max discrepancy = " << format_value(result.max_discrepancy)
                << " (tolerance " << format_value(s.check.tolerance) << ")";
      if (!result.detail.empty()) std::cout << "; " << result.detail;
      std::cout << "\n" << (result.ok ? "OK" : "FAIL") << "\n";
      return result.ok ? 0 : 1;
    }
    if (info_cmd->parsed()) {
      std::cout << info_text(domain_from_cli(info_kind, info_m, info_n));
      return 0;
    }
    if (sample_cmd->parsed()) {
      if (sample_boundary == sample_interior_flag) {
        std::cerr << "pass exactly one of --boundary / --interior\n";
        return 2;
      }
      const DomainSpec spec = domain_from_cli(sample_kind, sample_m, sample_n);
      const Matrix z = sample_boundary ? sample_bs_boundary(spec, sample_seed)
                                       : sample_interior(spec, sample_seed);
      std::cout << matrix_to_json(z).dump(2) << "\n";
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivergenceDetected) {
      std::cerr << e.what() << "\n";
      return 3;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bsdk
