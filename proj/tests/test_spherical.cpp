#include <cmath>

#include "doctest.h"
#include "fuhp/errors.hpp"
#include "fuhp/spherical.hpp"
#include "fuhp/verify.hpp"

using namespace fuhp;

TEST_CASE("table at q = 3") {
  const auto ctx = FieldCtx::create(3);
  const auto t = radial_eigenbasis(build_graph(ctx, 1));
  CHECK(t.radii == std::vector<Residue>{0, 2, 1});
  CHECK(t.orbit_sizes == std::vector<std::size_t>{1, 1, 4});
  REQUIRE(t.rows.size() == 3);

  CHECK(t.rows[0].multiplicity == 1);
  CHECK(t.rows[0].laplace_eigenvalue == doctest::Approx(0.0));
  for (Residue r : {0, 1, 2}) CHECK(t.value(0, r) == doctest::Approx(1.0));

  CHECK(t.rows[1].multiplicity == 3);
  CHECK(t.rows[1].laplace_eigenvalue == doctest::Approx(4.0));
  CHECK(t.value(1, 0) == doctest::Approx(1.0));
  CHECK(std::abs(t.value(1, 1)) < 1e-12);
  CHECK(t.value(1, 2) == doctest::Approx(-1.0));

  CHECK(t.rows[2].multiplicity == 2);
  CHECK(t.rows[2].laplace_eigenvalue == doctest::Approx(6.0));
  CHECK(t.value(2, 0) == doctest::Approx(1.0));
  CHECK(t.value(2, 1) == doctest::Approx(-0.5));
  CHECK(t.value(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("Laplacian eigenvalue from the table") {
  const auto ctx = FieldCtx::create(7);
  for (auto r_s : regular_radii(ctx)) {
    const auto t = radial_eigenbasis(build_graph(ctx, r_s));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      CHECK(laplace_eigenvalue(t, i, r_s) == doctest::Approx(t.rows[i].laplace_eigenvalue).epsilon(1e-10));
  }
}

TEST_CASE("invariants") {
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      CAPTURE(q);
      CAPTURE(r_s);
      const auto t = radial_eigenbasis(build_graph(ctx, r_s));
      CHECK(t.rows.size() == static_cast<std::size_t>(q));
      const auto inv = spherical_invariants(t);
      CHECK(inv.base_value_residual <= 1e-12);
      CHECK(inv.multiplicity_sum == q * (q - 1));
      CHECK(inv.orthogonality_residual <= 1e-10);
      CHECK(inv.reconstruction_residual <= 1e-9);
    }
  }
}

TEST_CASE("eigenvalue collisions are split") {
  const auto c5 = FieldCtx::create(5);
  const auto t5 = radial_eigenbasis(build_graph(c5, 2));
  CHECK(t5.distinct_adjacency_eigenvalues == 4);
  CHECK(t5.rows.size() == 5);
  const auto c13 = FieldCtx::create(13);
  const auto t13 = radial_eigenbasis(build_graph(c13, 4));
  CHECK(t13.distinct_adjacency_eigenvalues == 8);
  CHECK(t13.rows.size() == 13);
}

TEST_CASE("multiplicities") {
  for (std::int64_t q : {5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    const auto t = radial_eigenbasis(build_graph(ctx, regular_radii(ctx).front()));
    std::map<int, int> count;
    for (const auto& row : t.rows) ++count[row.multiplicity];
    CHECK(count[1] == 1);
    CHECK(count[q] == 1);
    CHECK(count[static_cast<int>(q + 1)] == (q - 3) / 2);
    CHECK(count[static_cast<int>(q - 1)] == (q - 1) / 2);
  }
}

TEST_CASE("principal formula") {
  const auto ctx = FieldCtx::create(7);
  for (auto r : radii_order(ctx)) CHECK(std::abs(principal_spherical(ctx, {0}, r) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(principal_spherical(ctx, {1}, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(principal_spherical(ctx, {1}, antipodal_radius(ctx)) - beta(ctx, {1}, 6)) < 1e-12);
}

TEST_CASE("cuspidal formula domain") {
  const auto ctx = FieldCtx::create(5);
  CHECK(disk_parameter(ctx, 0) == 0);
  CHECK_THROWS_AS(disk_parameter(ctx, antipodal_radius(ctx)), DomainError);
  CHECK_THROWS_AS(cuspidal_closed_form(ctx, {1}, 1), SingularRadius);
  CHECK_THROWS_AS(cuspidal_closed_form(ctx, {3}, 2), InvalidCharacter);
  CHECK(std::abs(cuspidal_closed_form(ctx, {1}, 0) - Complex(1, 0)) < 1e-12);
  CuspidalReading literal{CuspidalCoordinate::Literal, CuspidalInfinity::MinusNu};
  CHECK_THROWS_AS(cuspidal_spherical(ctx, {1}, 1, literal), SingularRadius);
}

TEST_CASE("formulas match the oracle") {
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      CAPTURE(q);
      CAPTURE(r_s);
      const auto rep = match_formulas_to_oracle(ctx, r_s, false);
      CHECK(rep.passed);
      CHECK(rep.rows_unique);
      CHECK(rep.principal_max_deviation <= kMatchTolerance);
      CHECK(rep.cuspidal_max_deviation <= kMatchTolerance);
      CHECK(rep.principal_max_imag <= 1e-12);
      CHECK(rep.chosen_reading == CuspidalReading{});
      CHECK(rep.matches.size() == principal_class_indices(ctx).size() + cuspidal_class_indices(ctx).size());
    }
  }
}

TEST_CASE("literal cuspidal coordinate does not match") {
  const auto ctx = FieldCtx::create(7);
  const auto rep = match_formulas_to_oracle(ctx, regular_radii(ctx).front(), false);
  for (const auto& s : rep.cuspidal_readings)
    if (s.reading.coordinate == CuspidalCoordinate::Literal) CHECK(s.max_deviation > 0.1);
}
