#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fuhp/errors.hpp"
#include "fuhp/theta.hpp"
#include "fuhp/verify.hpp"

using namespace fuhp;

TEST_CASE("classical theta at i") {
  const auto th = classical_theta(0.0, 1.0, 10);
  CHECK(std::abs(th.value - Complex(1.0864348112133080, 0.0)) <= 1e-12);
  CHECK(th.truncation_bound < 1e-130);
}

TEST_CASE("classical theta is periodic and tends to 1") {
  const auto a = classical_theta(0.3, 1.0, 10), b = classical_theta(1.3, 1.0, 10);
  CHECK(std::abs(a.value - b.value) <= 1e-12);
  const auto big = classical_theta(0.0, 20.0, 10);
  CHECK(std::abs(big.value - 1.0) <= 2 * std::exp(-20 * std::numbers::pi));
  CHECK_THROWS_AS(classical_theta(0.0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(classical_theta(0.0, 1.0, 0), DomainError);
}

TEST_CASE("classical theta solves the heat equation") {
  const double z = 0.2, t = 1.0, h = 1e-4;
  auto th = [](double zz, double tt) { return classical_theta(zz, tt, 12).value.real(); };
  const double dt = (th(z, t + h) - th(z, t - h)) / (2 * h);
  const double dzz = (th(z + h, t) - 2 * th(z, t) + th(z - h, t)) / (h * h);
  CHECK(std::abs(dt - dzz / (4 * std::numbers::pi)) <= 1e-6 * std::abs(dt));
}

TEST_CASE("index sets") {
  const auto ctx = FieldCtx::create(5);
  CHECK_THROWS_AS(index_sets(ctx, 1), SingularRadius);
  const auto s = index_sets(ctx, 2);
  CHECK(s.index_group_order == 24);
  REQUIRE(s.unit_indices.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(s.unit_indices[i] == 4 * static_cast<std::int64_t>(i + 1));
  for (std::int64_t m = 1; m <= 24; ++m) CHECK(s.in_n(m));
  for (auto y : s.v_r) CHECK((y >= 1 && y < 5));
}

TEST_CASE("reconciled theta equals the spectral kernel") {
  for (std::int64_t q : {3, 5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto table = radial_eigenbasis(build_graph(ctx, r_s));
      const auto match = match_formulas_to_oracle(ctx, table);
      for (double t : standard_time_grid()) {
        const auto e = heat_kernel_spectral(table, t);
        for (auto r : table.radii) {
          const Complex v = finite_theta(ctx, table, match, r, t, ThetaMode::Reconciled);
          CHECK(std::abs(v.real() - e.by_radius.at(r)) <= 1e-12);
          CHECK(v.imag() == 0.0);
        }
      }
    }
  }
}

TEST_CASE("reconciled theta at t = 0") {
  const auto ctx = FieldCtx::create(7);
  const auto table = radial_eigenbasis(build_graph(ctx, 1));
  for (auto r : table.radii) {
    const double v = finite_theta(ctx, table, r, 0.0, ThetaMode::Reconciled).real();
    CHECK(std::abs(v - (r == 0 ? 42.0 : 0.0)) <= 1e-12);
  }
  CHECK_THROWS_AS(finite_theta(ctx, table, 0, -1.0, ThetaMode::Reconciled), DomainError);
  CHECK_THROWS_AS(finite_theta(ctx, table, 1, 0.5, ThetaMode::Verbatim), SingularRadius);
}

TEST_CASE("verbatim phase is a sign") {
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r : radii_order(ctx))
      if (r != 1) CHECK(verbatim_phase_is_two_valued(ctx, r));
  }
}

TEST_CASE("verbatim terms") {
  const auto ctx = FieldCtx::create(5);
  const auto s = index_sets(ctx, 2);
  std::size_t covered = 0;
  for (std::int64_t l = 1; l <= s.index_group_order; ++l)
    for (auto m : s.unit_indices)
      if (const auto term = verbatim_term(ctx, s, l, m)) {
        ++covered;
        const bool base_l = l <= 4;
        CHECK(base_l == s.in_v(m));
      }
  CHECK(covered > 0);
}

TEST_CASE("consistency report") {
  for (std::int64_t q : {5, 7}) {
    const auto ctx = FieldCtx::create(q);
    const std::vector<double> grid{0.0, 0.1, 1.0};
    const auto rep = theta_consistency_report(ctx, regular_radii(ctx).front(), grid);
    CHECK(rep.passed);
    CHECK(rep.phase_two_valued);
    CHECK(rep.rows.size() == grid.size() * static_cast<std::size_t>(q));
    for (const auto& row : rep.rows) {
      CHECK(row.verbatim.has_value() == (row.r != 1));
      if (row.verbatim) CHECK(std::isfinite(std::abs(*row.verbatim)));
      if (row.t == 0.0) CHECK(std::abs(row.reconciled - (row.r == 0 ? q * (q - 1) : 0.0)) <= 1e-12);
    }
  }
}
