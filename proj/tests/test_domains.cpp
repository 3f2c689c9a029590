#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bsdk/domains.hpp"
#include "test_support.hpp"

using namespace bsdk;
using bsdk::testing::random_matrix;

namespace {

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("domain spec validation") {
  CHECK_NOTHROW(DomainSpec::type_i(3, 2));
  CHECK_THROWS_AS(DomainSpec::type_i(1, 2), Error);
  CHECK_THROWS_AS(DomainSpec::type_ii(1), Error);
  CHECK_NOTHROW(DomainSpec::type_iii(1));
}

TEST_CASE("structure_check per type") {
  const DomainSpec ii = DomainSpec::type_ii(2);
  Matrix anti = Matrix::Zero(2, 2);
  anti(0, 1) = Complex(0.3, 0.1);
  anti(1, 0) = -anti(0, 1);
  CHECK(structure_check(ii, anti));
  CHECK_FALSE(structure_check(ii, Matrix::Identity(2, 2)));

  const DomainSpec iii = DomainSpec::type_iii(2);
  Matrix sym(2, 2);
  sym << Complex(0.1), Complex(0.2, 0.1), Complex(0.2, 0.1), Complex(-0.4);
  CHECK(structure_check(iii, sym));

  CHECK_THROWS_AS(structure_check(DomainSpec::type_i(3, 2), Matrix::Zero(2, 2)),
                  Error);
}

TEST_CASE("contains_interior") {
  const DomainSpec spec = DomainSpec::type_i(2, 2);
  CHECK(contains_interior(spec, Matrix::Zero(2, 2)));
  CHECK(contains_interior(spec, diag2(0.5, 0.5)));
  CHECK_FALSE(contains_interior(spec, diag2(1.0, 0.3)));

  // Independent oracle for the (2,2) case: positivity of the leading
  // principal minors of Id - z z^dagger, expanded by hand. The second minor
  // is det(Id - z z^dagger) = 1 - sum |z_jk|^2 + |det z|^2.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix z = 0.8 * random_matrix(2, 2, seed) / 2.0;
    const double sum = z.squaredNorm();
    const double first = std::norm(z(0, 0)) + std::norm(z(0, 1));
    const double second = sum - std::norm(z.determinant());
    const bool oracle = first < 1.0 && second < 1.0;
    CHECK(contains_interior(spec, z) == oracle);
  }
  {
    // Entry-wise value quoted for diag(0.5, 0.5): the sum of squared moduli
    // plus the quartic cross terms evaluates to 0.5625 < 1.
    const double quoted = 0.25 + 0.25 + 0.25 * 0.25;
    CHECK(quoted == doctest::Approx(0.5625));
    CHECK(contains_interior(spec, diag2(0.5, 0.5)));
  }
}

TEST_CASE("boundary_rank") {
  const DomainSpec spec = DomainSpec::type_i(2, 2);
  CHECK(boundary_rank(spec, diag2(0.5, 0.2)).t == 0);
  CHECK(boundary_rank(spec, diag2(1.0, 0.3)).t == 1);
  CHECK(boundary_rank(spec, diag2(1.0, 1.0)).t == 2);
  CHECK_THROWS_AS(boundary_rank(spec, diag2(1.5, 0.0)), Error);

  // Type II with z = J_2 on D^II_4: all four defect eigenvalues vanish.
  const DomainSpec ii = DomainSpec::type_ii(4);
  CHECK(boundary_rank(ii, antisymmetric_unit(2)).t == 2);

  Matrix j1 = Matrix::Zero(4, 4);
  j1.topLeftCorner(2, 2) = antisymmetric_unit(1);
  j1(2, 3) = 0.4;
  j1(3, 2) = -0.4;
  CHECK(boundary_rank(ii, j1).t == 1);
}

TEST_CASE("boundary_rank reports odd nullity for type II") {
  // Slightly non-antisymmetric input whose null band splits a singular-value
  // pair: defect eigenvalues {0, ~2e-4} with a band of 1.6e-4 counts one zero.
  const DomainSpec ii = DomainSpec::type_ii(2);
  Matrix z = Matrix::Zero(2, 2);
  z(0, 1) = 1.0;
  z(1, 0) = -(1.0 - 1e-4);
  CHECK_THROWS_AS(boundary_rank(ii, z, 1.6e-4), Error);
  try {
    boundary_rank(ii, z, 1.6e-4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddNullity);
  }
}

TEST_CASE("on_bs_boundary") {
  std::mt19937_64 rng(3);
  const DomainSpec st = DomainSpec::type_i(3, 2);
  const Matrix frame = haar_unitary(3, rng).leftCols(2);
  CHECK(on_bs_boundary(st, frame, 1e-12));

  const DomainSpec iii = DomainSpec::type_iii(2);
  CHECK(on_bs_boundary(iii, Matrix::Identity(2, 2)));

  // Type II n=3: block J_1 padded with zero has z^dagger z = diag(1,1,0).
  const DomainSpec ii3 = DomainSpec::type_ii(3);
  Matrix z = Matrix::Zero(3, 3);
  z.topLeftCorner(2, 2) = antisymmetric_unit(1);
  CHECK(on_bs_boundary(ii3, z, 1e-12));
  CHECK(boundary_rank(ii3, z).t == 1);

  CHECK_FALSE(on_bs_boundary(st, Matrix::Zero(3, 2)));
}

TEST_CASE("canonical_form") {
  const DomainSpec spec = DomainSpec::type_i(2, 2);

  SUBCASE("interior diagonal input") {
    const Matrix z = diag2(0.7, 0.2);
    const CanonicalForm form = canonical_form(spec, z);
    CHECK(form.rank.t == 0);
    REQUIRE(form.residual_sv.size() == 2);
    CHECK(form.residual_sv[0] == doctest::Approx(0.7));
    CHECK(form.residual_sv[1] == doctest::Approx(0.2));
  }

  SUBCASE("boundary point diag(1, 0.3)") {
    const CanonicalForm form = canonical_form(spec, diag2(1.0, 0.3));
    CHECK(form.rank.t == 1);
    REQUIRE(form.residual_sv.size() == 1);
    CHECK(form.residual_sv[0] == doctest::Approx(0.3));
  }

  SUBCASE("Stiefel point has empty residual") {
    std::mt19937_64 rng(17);
    const DomainSpec st = DomainSpec::type_i(3, 2);
    const Matrix frame = haar_unitary(3, rng).leftCols(2);
    const CanonicalForm form = canonical_form(st, frame);
    CHECK(form.rank.t == 2);
    CHECK(form.residual_sv.empty());
  }

  SUBCASE("round trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DomainSpec st = DomainSpec::type_i(4, 3);
      const Matrix z = sample_interior(st, seed);
      const CanonicalForm form = canonical_form(st, z);
      // Rebuild the canonical matrix and undo the unitaries.
      Matrix canonical = Matrix::Zero(4, 3);
      for (std::size_t i = 0; i < form.residual_sv.size(); ++i) {
        canonical(static_cast<Eigen::Index>(form.rank.t + i),
                  static_cast<Eigen::Index>(form.rank.t + i)) = form.residual_sv[i];
      }
      for (int i = 0; i < form.rank.t; ++i) canonical(i, i) = 1.0;
      const Matrix rebuilt = form.u1.adjoint() * canonical * form.u2;
      CHECK((rebuilt - z).norm() < 1e-10);
      CHECK((form.u1 * form.u1.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-12);
      CHECK((form.u2 * form.u2.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-12);
    }
  }

  SUBCASE("outside the closure") {
    CHECK_THROWS_AS(canonical_form(spec, diag2(1.5, 0.0)), Error);
  }
}

TEST_CASE("project_component") {
  SUBCASE("type I") {
    const DomainSpec spec = DomainSpec::type_i(2, 2);
    const Matrix z = diag2(1.0, Complex(0.2, 0.4));
    const ComponentProjection proj = project_component(spec, z);
    CHECK(proj.sub == DomainSpec::type_i(1, 1));
    CHECK(proj.z_sub(0, 0) == Complex(0.2, 0.4));
    CHECK(contains_interior(proj.sub, proj.z_sub));
  }

  SUBCASE("type III") {
    const DomainSpec spec = DomainSpec::type_iii(2);
    const Matrix z = diag2(1.0, Complex(0.0, 0.4));
    const ComponentProjection proj = project_component(spec, z);
    CHECK(proj.sub == DomainSpec::type_iii(1));
    CHECK(proj.z_sub(0, 0) == Complex(0.0, 0.4));
  }

  SUBCASE("type II block extraction") {
    const DomainSpec spec = DomainSpec::type_ii(4);
    Matrix z = Matrix::Zero(4, 4);
    z.topLeftCorner(2, 2) = antisymmetric_unit(1);
    z(2, 3) = Complex(0.1, 0.2);
    z(3, 2) = -z(2, 3);
    const ComponentProjection proj = project_component(spec, z);
    CHECK(proj.sub == DomainSpec::type_ii(2));
    CHECK(proj.z_sub(0, 1) == Complex(0.1, 0.2));
  }

  SUBCASE("rejects non-canonical input") {
    const DomainSpec spec = DomainSpec::type_i(2, 2);
    Matrix z(2, 2);
    z << 0.0, 1.0, 1.0, 0.0;  // rank-1 defect but permuted
    CHECK_THROWS_AS(project_component(spec, z), Error);
    CHECK_THROWS_AS(project_component(spec, diag2(0.5, 0.2)), Error);
  }

  SUBCASE("re-embedding reproduces the canonical form") {
    const DomainSpec spec = DomainSpec::type_i(3, 2);
    Matrix z = Matrix::Zero(3, 2);
    z(0, 0) = 1.0;
    z(1, 1) = Complex(0.3, -0.2);
    const ComponentProjection proj = project_component(spec, z);
    Matrix rebuilt = Matrix::Zero(3, 2);
    rebuilt(0, 0) = 1.0;
    rebuilt.bottomRightCorner(2, 1) = proj.z_sub;
    CHECK((rebuilt - z).norm() == 0.0);
  }
}

TEST_CASE("samplers") {
  SUBCASE("interior samples are deterministic members") {
    for (const DomainSpec spec : {DomainSpec::type_i(3, 2), DomainSpec::type_ii(4),
                                  DomainSpec::type_iii(3)}) {
      const Matrix a = sample_interior(spec, 42);
      const Matrix b = sample_interior(spec, 42);
      CHECK((a - b).norm() == 0.0);
      CHECK(structure_check(spec, a, 0.0));
      CHECK(contains_interior(spec, a));
      CHECK(boundary_rank(spec, a).t == 0);
    }
  }

  SUBCASE("boundary samples land on the BS boundary") {
    for (const DomainSpec spec : {DomainSpec::type_i(3, 2), DomainSpec::type_i(2, 2),
                                  DomainSpec::type_ii(4), DomainSpec::type_ii(3),
                                  DomainSpec::type_iii(3)}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix z = sample_bs_boundary(spec, seed);
        CHECK(on_bs_boundary(spec, z, 1e-12));
        if (spec.kind == DomainKind::TypeII) {
          CHECK((z + z.transpose()).norm() == 0.0);
        }
        if (spec.kind == DomainKind::TypeIII) {
          CHECK((z - z.transpose()).norm() == 0.0);
        }
        const int expected =
            spec.kind == DomainKind::TypeII ? spec.n / 2 : spec.n;
        CHECK(boundary_rank(spec, z, 1e-8).t == expected);
      }
    }
  }

  SUBCASE("type I (m,1) boundary samples are unit vectors") {
    const DomainSpec sphere = DomainSpec::type_i(3, 1);
    const Matrix z = sample_bs_boundary(sphere, 9);
    CHECK(z.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("square type I boundary samples are unitary") {
    const DomainSpec spec = DomainSpec::type_i(2, 2);
    const Matrix z = sample_bs_boundary(spec, 1);
    CHECK((z * z.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-12);
  }
}

TEST_CASE("dims") {
  CHECK(dims(DomainSpec::type_i(2, 2)).bs_real == 4);
  CHECK(dims(DomainSpec::type_i(2, 2)).domain_real == 8);
  CHECK(dims(DomainSpec::type_i(3, 1)).bs_real == 5);  // S^(2m-1)
  CHECK(dims(DomainSpec::type_ii(4)).bs_real == 6);
  CHECK(dims(DomainSpec::type_ii(4)).domain_real == 12);
  CHECK(dims(DomainSpec::type_iii(3)).bs_real == 6);
  CHECK(dims(DomainSpec::type_iii(3)).domain_real == 12);
}

TEST_CASE("reduced_domain chains") {
  CHECK(reduced_domain(DomainSpec::type_i(2, 2), 1) == DomainSpec::type_i(1, 1));
  CHECK_FALSE(reduced_domain(DomainSpec::type_i(2, 2), 2).has_value());
  CHECK(reduced_domain(DomainSpec::type_ii(4), 1) == DomainSpec::type_ii(2));
  CHECK_FALSE(reduced_domain(DomainSpec::type_ii(4), 2).has_value());
  CHECK(reduced_domain(DomainSpec::type_iii(3), 2) == DomainSpec::type_iii(1));
}
