#include "bsdk/flows.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

namespace bsdk {

ModelSpec ModelSpec::create(const DomainSpec& domain, int family_t, double kappa,
                            Matrix a, std::optional<Matrix> d) {
  if (!std::isfinite(kappa)) {
    fail(ErrorKind::DomainViolation, "coupling must be finite");
  }
  const auto reduced = reduced_domain(domain, family_t);
  if (!reduced) {
    std::ostringstream msg;
    msg << "family index " << family_t << " leaves no domain";
    fail(ErrorKind::DomainViolation, msg.str());
  }
  const GroupSpec group = GroupSpec::for_domain(*reduced);
  ModelSpec model;
  model.domain = domain;
  model.family_t = family_t;
  model.kappa = kappa;
  model.drift = GeneratorSpec::create(group, std::move(a),
                                      Matrix::Zero(group.m, group.n), std::move(d));
  return model;
}

DomainSpec ModelSpec::effective_domain() const {
  return *reduced_domain(domain, family_t);
}

GroupSpec ModelSpec::effective_group() const {
  return GroupSpec::for_domain(effective_domain());
}

MeanField mean_field(const EnsembleState& ens, double kappa) {
  if (ens.z.empty()) {
    fail(ErrorKind::EmptyEnsemble, "mean field of an empty ensemble");
  }
  Matrix sum = Matrix::Zero(ens.z[0].rows(), ens.z[0].cols());
  for (const Matrix& z : ens.z) {
    if (z.rows() != sum.rows() || z.cols() != sum.cols()) {
      fail(ErrorKind::ShapeMismatch, "ensemble oscillators differ in shape");
    }
    sum += z;
  }
  return MeanField{(kappa / static_cast<double>(ens.size())) * sum};
}

namespace {

void check_ensemble(const ModelSpec& model, const EnsembleState& ens) {
  const DomainSpec spec = model.effective_domain();
  if (ens.z.empty()) {
    fail(ErrorKind::EmptyEnsemble, "ensemble has no oscillators");
  }
  for (const Matrix& z : ens.z) {
    if (z.rows() != spec.m || z.cols() != spec.n) {
      std::ostringstream msg;
      msg << "oscillator shape " << z.rows() << "x" << z.cols()
          << " does not match domain " << spec.m << "x" << spec.n;
      fail(ErrorKind::ShapeMismatch, msg.str());
    }
    // Loose band: integration keeps the symmetry near machine precision,
    // so anything past 1e-6 is caller error.
    if (!structure_check(spec, z, 1e-6)) {
      fail(ErrorKind::StructureViolation,
           "oscillator violates the domain symmetry");
    }
  }
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || count < 2 * workers) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::future<void>> futures;
  const int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [&body, begin, end] {
      for (int i = begin; i < end; ++i) body(i);
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace

std::vector<Matrix> coupled_rhs(const ModelSpec& model, const EnsembleState& ens,
                                int workers) {
  check_ensemble(model, ens);
  const MeanField field = mean_field(ens, model.kappa);
  const Matrix& a = model.drift.a();
  const Matrix d = model.drift.d();
  const Matrix coupling_adjoint = field.z.adjoint();

  // Thread spawn costs dwarf the arithmetic on desk-scale ensembles; stay
  // sequential unless the per-call work is substantial. Results are bitwise
  // identical either way (disjoint writes, fixed-order mean field).
  const long work = static_cast<long>(ens.size()) *
                    static_cast<long>(ens.z[0].size());
  if (work < 4096) workers = 1;

  std::vector<Matrix> out(ens.z.size());
  parallel_for(ens.size(), workers, [&](int k) {
    const Matrix& z = ens.z[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] =
        field.z + a * z - z * d - z * coupling_adjoint * z;
  });
  return out;
}

std::vector<double> classic_kuramoto_rhs(const std::vector<double>& phases,
                                         double omega, double kappa) {
  const std::size_t n = phases.size();
  std::vector<double> out(n, omega);
  if (n == 0) return out;
  const double gain = 2.0 * kappa / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += std::sin(phases[j] - phases[i]);
    }
    out[i] += gain * sum;
  }
  return out;
}

double reduced_frequency(const ModelSpec& model) {
  const GroupSpec group = model.effective_group();
  if (group.m != 1 || group.n != 1) {
    fail(ErrorKind::ShapeMismatch, "reduced frequency is defined for (1,1) only");
  }
  return (model.drift.a()(0, 0) - model.drift.d()(0, 0)).imag();
}

Matrix group_lift_rhs(const ModelSpec& model, const GroupElement& h,
                      const MeanField& field) {
  const GroupSpec group = model.effective_group();
  if (h.spec() != group) {
    fail(ErrorKind::ShapeMismatch, "group element does not match the model");
  }
  const GeneratorSpec gen = model.drift.with_b(field.z);
  return lie_element(group, gen) * h.matrix();
}

EnsembleState transport(const GroupElement& h, const EnsembleState& initial,
                        double tol) {
  EnsembleState out;
  out.domain = initial.domain;
  out.time = initial.time;
  out.z.reserve(initial.z.size());
  for (const Matrix& z : initial.z) {
    out.z.push_back(mobius(h, z, tol));
  }
  return out;
}

namespace {

void check_scalar_drift(Complex a) {
  if (std::abs(a.real()) > 1e-12 * (1.0 + std::abs(a))) {
    fail(ErrorKind::DomainViolation, "scalar drift must be purely imaginary");
  }
}

}  // namespace

Complex disc_flow_rhs(Complex z, Complex a, Complex b) {
  check_scalar_drift(a);
  if (std::abs(z) >= 1.0) {
    fail(ErrorKind::DomainViolation, "disc flow requires |z| < 1");
  }
  return b + 2.0 * a * z - std::conj(b) * z * z;
}

double circle_flow_rhs(Complex z, Complex a, Complex b) {
  check_scalar_drift(a);
  if (std::abs(std::abs(z) - 1.0) > 1e-9) {
    fail(ErrorKind::DomainViolation, "circle flow requires |z| = 1");
  }
  const Complex i(0.0, 1.0);
  const Complex velocity =
      -i * b * std::conj(z) - 2.0 * i * a + i * std::conj(b) * z;
  return velocity.real();
}

}  // namespace bsdk
