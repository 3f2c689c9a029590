#include "bsdk/observables.hpp"

#include <cmath>
#include <sstream>

namespace bsdk {

int bs_rank(const DomainSpec& spec) {
  if (spec.kind == DomainKind::TypeII) return 2 * (spec.n / 2);
  return spec.n;
}

namespace {

Matrix ensemble_average(const EnsembleState& ens) {
  if (ens.z.empty()) {
    fail(ErrorKind::EmptyEnsemble, "observable of an empty ensemble");
  }
  Matrix sum = Matrix::Zero(ens.z[0].rows(), ens.z[0].cols());
  for (const Matrix& z : ens.z) sum += z;
  return sum / static_cast<double>(ens.size());
}

}  // namespace

double order_parameter_value(const EnsembleState& ens) {
  return ensemble_average(ens).norm() / std::sqrt(static_cast<double>(bs_rank(ens.domain)));
}

double order_parameter(const EnsembleState& ens, double tol) {
  if (ens.z.empty()) {
    fail(ErrorKind::EmptyEnsemble, "order parameter of an empty ensemble");
  }
  int common = -2;
  for (int k = 0; k < ens.size(); ++k) {
    const int t = boundary_rank(ens.domain, ens.z[static_cast<std::size_t>(k)], tol).t;
    if (common == -2) {
      common = t;
    } else if (t != common) {
      std::ostringstream msg;
      msg << "oscillator " << k << " has rank " << t << ", expected " << common;
      fail(ErrorKind::MixedComponents, msg.str());
    }
  }
  return order_parameter_value(ens);
}

double pairwise_spread(const EnsembleState& ens) {
  if (ens.z.empty()) {
    fail(ErrorKind::EmptyEnsemble, "spread of an empty ensemble");
  }
  double spread = 0.0;
  for (std::size_t j = 0; j < ens.z.size(); ++j) {
    for (std::size_t k = j + 1; k < ens.z.size(); ++k) {
      spread = std::max(spread, (ens.z[j] - ens.z[k]).norm());
    }
  }
  return spread;
}

std::vector<ChainEntry> chain_report(const DomainSpec& spec,
                                     const EnsembleState& ens, double tol) {
  std::vector<ChainEntry> report;
  report.reserve(ens.z.size());
  for (const Matrix& z : ens.z) {
    ChainEntry entry;
    entry.rank = boundary_rank(spec, z, tol);
    entry.sub = reduced_domain(spec, entry.rank.t);
    entry.on_bs = on_bs_boundary(spec, z, tol);
    report.push_back(std::move(entry));
  }
  return report;
}

int monitor_rank(const DomainSpec& spec, const Matrix& z, double tol) {
  const Matrix defect = Matrix::Identity(spec.m, spec.m) - z * z.adjoint();
  const RealVector eigenvalues = herm_eig(defect, 1e-6).eigenvalues;
  int zeros = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] <= tol) ++zeros;
  }
  if (spec.kind == DomainKind::TypeII) {
    return zeros % 2 == 0 ? zeros / 2 : -1;
  }
  return zeros;
}

ObservableRecord observe(const EnsembleState& ens, double kappa, double rank_tol) {
  ObservableRecord record;
  record.time = ens.time;
  record.r = order_parameter_value(ens);
  record.spread = pairwise_spread(ens);
  record.mean_field_norm = mean_field(ens, kappa).z.norm();
  record.ranks.reserve(ens.z.size());
  double tangency = 0.0;
  for (const Matrix& z : ens.z) {
    record.ranks.push_back(monitor_rank(ens.domain, z, rank_tol));
    tangency = std::max(tangency, bs_deviation(ens.domain, z));
  }
  record.max_tangency = tangency;
  return record;
}

}  // namespace bsdk
