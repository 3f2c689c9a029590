#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bsdk/observables.hpp"
#include "test_support.hpp"

using namespace bsdk;

namespace {

EnsembleState boundary_ensemble(const DomainSpec& spec, int n, std::uint64_t seed) {
  EnsembleState ens;
  ens.domain = spec;
  for (int k = 0; k < n; ++k) {
    ens.z.push_back(sample_bs_boundary(spec, seed + static_cast<std::uint64_t>(k)));
  }
  return ens;
}

}  // namespace

TEST_CASE("order_parameter") {
  const DomainSpec u2 = DomainSpec::type_i(2, 2);

  SUBCASE("consensus gives r = 1") {
    EnsembleState ens;
    ens.domain = u2;
    const Matrix z = sample_bs_boundary(u2, 5);
    ens.z = {z, z, z, z};
    CHECK(order_parameter(ens) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("roots of unity cancel") {
    EnsembleState ens;
    ens.domain = DomainSpec::type_i(1, 1);
    const int n = 6;
    for (int k = 0; k < n; ++k) {
      Matrix z(1, 1);
      z << std::polar(1.0, 2.0 * M_PI * k / n);
      ens.z.push_back(z);
    }
    CHECK(order_parameter(ens) < 1e-14);
  }

  SUBCASE("antipodal unitaries cancel") {
    EnsembleState ens;
    ens.domain = u2;
    ens.z = {Matrix::Identity(2, 2), Matrix(-Matrix::Identity(2, 2))};
    CHECK(order_parameter(ens) == doctest::Approx(0.0));
  }

  SUBCASE("mixed components are rejected") {
    EnsembleState ens;
    ens.domain = u2;
    Matrix interior = Matrix::Zero(2, 2);
    interior(0, 0) = 0.5;
    ens.z = {Matrix::Identity(2, 2), interior};
    CHECK_THROWS_AS(order_parameter(ens), Error);
  }

  SUBCASE("invariant under permutation and global phase") {
    EnsembleState ens = boundary_ensemble(u2, 5, 23);
    const double base = order_parameter(ens);
    std::rotate(ens.z.begin(), ens.z.begin() + 3, ens.z.end());
    CHECK(order_parameter(ens) == doctest::Approx(base).epsilon(1e-13));
    const Complex phase = std::polar(1.0, 0.9);
    for (Matrix& z : ens.z) z *= phase;
    CHECK(order_parameter(ens) == doctest::Approx(base).epsilon(1e-13));
  }

  SUBCASE("normalization covers all types") {
    for (const DomainSpec spec :
         {DomainSpec::type_i(3, 2), DomainSpec::type_ii(4), DomainSpec::type_ii(3),
          DomainSpec::type_iii(3)}) {
      EnsembleState ens;
      ens.domain = spec;
      const Matrix z = sample_bs_boundary(spec, 2);
      ens.z = {z, z};
      CHECK(order_parameter(ens) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("pairwise_spread") {
  const DomainSpec u2 = DomainSpec::type_i(2, 2);
  EnsembleState ens;
  ens.domain = u2;
  const Matrix z = sample_bs_boundary(u2, 1);
  ens.z = {z, z};
  CHECK(pairwise_spread(ens) == 0.0);

  ens.z = {Matrix::Identity(2, 2), Matrix(-Matrix::Identity(2, 2))};
  CHECK(pairwise_spread(ens) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("spread zero iff r = 1 on boundary ensembles") {
  const DomainSpec spec = DomainSpec::type_iii(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EnsembleState ens = boundary_ensemble(spec, 4, seed * 11 + 1);
    const double r = order_parameter(ens);
    const double spread = pairwise_spread(ens);
    if (spread == 0.0) {
      CHECK(r == doctest::Approx(1.0));
    } else {
      CHECK(r < 1.0 - 1e-12);
    }
  }
}

TEST_CASE("chain_report") {
  const DomainSpec u2 = DomainSpec::type_i(2, 2);

  SUBCASE("interior ensemble") {
    EnsembleState ens;
    ens.domain = u2;
    ens.z = {sample_interior(u2, 1), sample_interior(u2, 2)};
    for (const ChainEntry& entry : chain_report(u2, ens)) {
      CHECK(entry.rank.t == 0);
      REQUIRE(entry.sub.has_value());
      CHECK(*entry.sub == u2);
      CHECK_FALSE(entry.on_bs);
    }
  }

  SUBCASE("rank-1 point projects to the disc") {
    EnsembleState ens;
    ens.domain = u2;
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = 0.3;
    ens.z = {z};
    const auto report = chain_report(u2, ens);
    CHECK(report[0].rank.t == 1);
    REQUIRE(report[0].sub.has_value());
    CHECK(*report[0].sub == DomainSpec::type_i(1, 1));
    CHECK_FALSE(report[0].on_bs);
  }

  SUBCASE("odd type II boundary points project to a point") {
    const DomainSpec ii3 = DomainSpec::type_ii(3);
    EnsembleState ens;
    ens.domain = ii3;
    ens.z = {sample_bs_boundary(ii3, 2)};
    const auto report = chain_report(ii3, ens);
    CHECK(report[0].rank.t == 1);
    CHECK(report[0].on_bs);
    CHECK_FALSE(report[0].sub.has_value());
  }

  SUBCASE("Stiefel samples sit on the BS boundary") {
    const DomainSpec st = DomainSpec::type_i(3, 2);
    EnsembleState ens = boundary_ensemble(st, 3, 77);
    for (const ChainEntry& entry : chain_report(st, ens)) {
      CHECK(entry.rank.t == 2);
      CHECK(entry.on_bs);
      CHECK_FALSE(entry.sub.has_value());
    }
  }

  SUBCASE("ranks are invariant under transport") {
    const GroupSpec group = GroupSpec::for_domain(u2);
    EnsembleState ens;
    ens.domain = u2;
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = 0.3;
    ens.z = {sample_interior(u2, 5), z, sample_bs_boundary(u2, 6)};
    const auto before = chain_report(u2, ens);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const EnsembleState moved = transport(random_element(group, seed, 0.4), ens);
      const auto after = chain_report(u2, moved);
      for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(after[i].rank.t == before[i].rank.t);
      }
    }
  }
}

TEST_CASE("observe produces a full record") {
  const DomainSpec spec = DomainSpec::type_ii(4);
  EnsembleState ens = boundary_ensemble(spec, 5, 3);
  ens.time = 2.5;
  const ObservableRecord rec = observe(ens, 1.2, 1e-8);
  CHECK(rec.time == 2.5);
  CHECK(rec.r >= 0.0);
  CHECK(rec.r <= 1.0 + 1e-12);
  CHECK(rec.spread <= 2.0 * std::sqrt(4.0) + 1e-12);
  CHECK(rec.ranks == std::vector<int>(5, 2));
  CHECK(rec.max_tangency < 1e-12);
  CHECK(rec.mean_field_norm <= 1.2 * 2.0 + 1e-12);
}
