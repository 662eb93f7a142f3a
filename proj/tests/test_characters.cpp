#include <cmath>

#include "doctest.h"
#include "fuhp/characters.hpp"
#include "fuhp/errors.hpp"

using namespace fuhp;

namespace {
bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("multiplicative characters") {
  const auto ctx = FieldCtx::create(5);
  CHECK(near(beta(ctx, {1}, 2), Complex(0, 1)));
  CHECK(near(beta(ctx, {2}, 4), Complex(1, 0)));
  CHECK(near(beta(ctx, {1}, 4), Complex(-1, 0)));
  CHECK(near(beta(ctx, {0}, 3), Complex(1, 0)));
  CHECK_THROWS_AS(beta(ctx, {1}, 0), DomainError);
}

TEST_CASE("multiplicative characters are multiplicative") {
  const auto ctx = FieldCtx::create(7);
  for (std::int64_t j = 0; j < 6; ++j)
    for (Residue a = 1; a < 7; ++a)
      for (Residue b = 1; b < 7; ++b)
        CHECK(near(beta(ctx, {j}, ctx.mul(a, b)), beta(ctx, {j}, a) * beta(ctx, {j}, b)));
}

TEST_CASE("characters of the norm-one subgroup") {
  const auto ctx = FieldCtx::create(3);
  CHECK(near(nu(ctx, {1}, ctx.zeta_pow(2)), Complex(0, 1)));
  CHECK(near(nu(ctx, {1}, {1, 0}), Complex(1, 0)));
  CHECK_THROWS_AS(nu(ctx, {1}, ctx.zeta()), DomainError);

  const auto c7 = FieldCtx::create(7);
  const auto u = norm_one_subgroup(c7);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(unit_circle_index(c7, u[i]) == static_cast<std::int64_t>(i));
    CHECK(nu0(c7, u[i]) == (i % 2 == 0 ? 1 : -1));
    // nu_j on U depends on j mod q+1
    CHECK(near(nu(c7, {3}, u[i]), nu(c7, {3 + 8}, u[i])));
  }
}

TEST_CASE("nu0 detects squares in U") {
  const auto ctx = FieldCtx::create(5);
  const auto u = norm_one_subgroup(ctx);
  for (const auto& a : u) {
    bool square = false;
    for (const auto& b : u) square = square || ctx.ext_mul(b, b) == a;
    CHECK((nu0(ctx, a) == 1) == square);
  }
}

TEST_CASE("self-dual characters") {
  const auto ctx = FieldCtx::create(5);
  CHECK(is_self_dual_on_unit_circle(ctx, {0}));
  CHECK(is_self_dual_on_unit_circle(ctx, {3}));
  CHECK_FALSE(is_self_dual_on_unit_circle(ctx, {1}));
  CHECK_FALSE(is_self_dual_on_unit_circle(ctx, {2}));
}

TEST_CASE("orthogonality") {
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto rep = character_orthogonality_check(FieldCtx::create(q));
    CHECK(rep.passed);
    CHECK(rep.max_residual <= 1e-12);
  }
}
