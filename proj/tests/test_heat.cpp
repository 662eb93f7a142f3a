#include <cmath>
#include <random>

#include "doctest.h"
#include "fuhp/errors.hpp"
#include "fuhp/heat.hpp"
#include "fuhp/verify.hpp"

using namespace fuhp;

namespace {

double closed_form_q3(Residue r, double t) {
  const double a = std::exp(-4 * t), b = std::exp(-6 * t);
  switch (r) {
    case 0: return 1 + 3 * a + 2 * b;
    case 1: return 1 - b;
    default: return 1 - 3 * a + 2 * b;
  }
}

}  // namespace

TEST_CASE("closed form at q = 3") {
  const auto ctx = FieldCtx::create(3);
  const auto table = radial_eigenbasis(build_graph(ctx, 1));
  for (double t : {0.0, 0.5, 1.0, 5.0}) {
    const auto e = heat_kernel_spectral(table, t);
    for (Residue r : {0, 1, 2}) CHECK(std::abs(e.by_radius.at(r) - closed_form_q3(r, t)) <= 1e-12);
  }
  CHECK(heat_kernel_spectral(table, std::log(2.0) / 6).by_radius.at(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(heat_kernel_spectral(table, 0).by_radius.at(0) == doctest::Approx(6.0));
}

TEST_CASE("spectral kernel equals the matrix exponential") {
  for (std::int64_t q : {3, 5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto g = build_graph(ctx, r_s);
      const auto cmp = compare_heat(g, radial_eigenbasis(g), standard_time_grid());
      CHECK(cmp.max_oracle_deviation <= 1e-9);
      CHECK(cmp.max_mass_residual <= 1e-10);
      CHECK(cmp.min_value >= -1e-12);
    }
  }
}

TEST_CASE("semigroup property") {
  const auto ctx = FieldCtx::create(5);
  const HeatOracle oracle(build_graph(ctx, 1));
  const Eigen::MatrixXd lhs = oracle.semigroup(0.3) * oracle.semigroup(0.7);
  CHECK((lhs - oracle.semigroup(1.0)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((oracle.semigroup(0.0) - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("kernel from another base point is a translate") {
  const auto ctx = FieldCtx::create(3);
  const auto g = build_graph(ctx, 1);
  const HeatOracle oracle(g);
  const auto base = oracle.kernel(0.4);
  for (std::size_t w = 0; w < g.size(); ++w) {
    const Point pw = g.point_at(w);
    const auto moved = oracle.kernel(0.4, pw);
    for (std::size_t z = 0; z < g.size(); ++z)
      CHECK((*moved.by_vertex)[z] ==
            doctest::Approx(base.by_radius.at(distance(ctx, g.point_at(z), pw))).epsilon(1e-12));
  }
}

TEST_CASE("spectral gap") {
  const auto ctx = FieldCtx::create(3);
  CHECK(HeatOracle(build_graph(ctx, 1)).spectral_gap() == doctest::Approx(4.0));
}

TEST_CASE("initial condition") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (std::int64_t q : {3, 5, 7}) {
    const auto ctx = FieldCtx::create(q);
    const auto g = build_graph(ctx, regular_radii(ctx).front());
    std::vector<double> f(g.size());
    for (auto& x : f) x = unif(rng);
    const std::vector<double> grid{1e-6, 0.0};
    const auto res = initial_condition_check(g, f, grid);
    CHECK(res[0] <= initial_condition_tolerance(q, 1e-6, 1.0));
    CHECK(res[1] <= 1e-12);
  }
  const auto ctx = FieldCtx::create(3);
  CHECK_THROWS_AS(initial_condition_check(build_graph(ctx, 1), std::vector<double>(5), std::vector<double>{0.1}),
                  InvalidParameter);
}

TEST_CASE("Fourier coefficients") {
  for (std::int64_t q : {5, 7}) {
    const auto ctx = FieldCtx::create(q);
    const auto g = build_graph(ctx, regular_radii(ctx).back());
    const auto table = radial_eigenbasis(g);
    const HeatOracle oracle(g);
    for (double t : {0.0, 0.2, 2.0}) {
      CHECK(fourier_coefficient_check(table, t).passed);
      CHECK(fourier_coefficient_check(table, oracle.kernel(t)).passed);
    }
  }
}

TEST_CASE("negative time") {
  const auto ctx = FieldCtx::create(3);
  const auto g = build_graph(ctx, 1);
  CHECK_THROWS_AS(heat_kernel_spectral(radial_eigenbasis(g), -1.0), DomainError);
  CHECK_THROWS_AS(HeatOracle(g).kernel(-0.1), DomainError);
}

TEST_CASE("group of q = 3") {
  const auto ctx = FieldCtx::create(3);
  const auto gg = build_group_graph(ctx, 1);
  CHECK(gg.elements.size() == 48);
  CHECK(gg.stabilizer.size() == 8);
  CHECK(gg.generators.size() == 32);
  CHECK(gg.elements[gg.identity] == Mat2{});
  for (auto k : gg.stabilizer) CHECK(project(ctx, gg.elements[k]) == kBasePoint);
}

TEST_CASE("method of images") {
  const std::vector<double> grid{0.1, 1.0, 5.0};
  const auto rep = method_of_images_check(FieldCtx::create(3), 1, grid);
  CHECK(rep.passed);
  CHECK(rep.max_deviation <= 1e-8);
  CHECK(rep.measured_scaling == doctest::Approx(8.0).epsilon(1e-12));

  const auto rep5 = method_of_images_check(FieldCtx::create(5), 1, grid);
  CHECK(rep5.group_order == 480);
  CHECK(rep5.passed);
}
