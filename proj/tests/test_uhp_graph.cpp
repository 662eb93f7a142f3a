#include <algorithm>

#include "doctest.h"
#include "fuhp/errors.hpp"
#include "fuhp/uhp_graph.hpp"

using namespace fuhp;

TEST_CASE("vertex indexing") {
  const auto ctx = FieldCtx::create(5);
  CHECK(half_plane_size(ctx) == 20);
  for (std::size_t v = 0; v < 20; ++v) CHECK(vertex_index(ctx, vertex_point(ctx, v)) == v);
  CHECK(vertex_index(ctx, kBasePoint) == 0);
}

TEST_CASE("spheres at q = 3") {
  const auto ctx = FieldCtx::create(3);
  CHECK(antipodal_radius(ctx) == 2);
  CHECK(sphere(ctx, 0) == std::vector<Point>{{0, 1}});
  CHECK(sphere(ctx, 2) == std::vector<Point>{{0, 2}});
  CHECK(sphere(ctx, 1).size() == 4);
  CHECK(radii_order(ctx) == std::vector<Residue>{0, 2, 1});
  CHECK(regular_radii(ctx) == std::vector<Residue>{1});
}

TEST_CASE("distance") {
  const auto ctx = FieldCtx::create(3);
  CHECK(distance(ctx, {0, 1}, {0, 1}) == 0);
  CHECK(distance(ctx, {0, 1}, {0, 2}) == 2);
  CHECK(distance(ctx, {0, 1}, {1, 1}) == 1);

  const auto c7 = FieldCtx::create(7);
  for (std::size_t i = 0; i < half_plane_size(c7); ++i)
    for (std::size_t j = 0; j < half_plane_size(c7); ++j) {
      const Point z = vertex_point(c7, i), w = vertex_point(c7, j);
      CHECK(distance(c7, z, w) == distance(c7, w, z));
    }
}

TEST_CASE("distance is invariant under the affine group") {
  const auto ctx = FieldCtx::create(5);
  const auto n = half_plane_size(ctx);
  for (std::size_t gi = 0; gi < n; ++gi)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; j += 3) {
        const Point g = vertex_point(ctx, gi), z = vertex_point(ctx, i), w = vertex_point(ctx, j);
        CHECK(distance(ctx, translate(ctx, g, z), translate(ctx, g, w)) == distance(ctx, z, w));
      }
}

TEST_CASE("affine inverse") {
  const auto ctx = FieldCtx::create(7);
  for (std::size_t i = 0; i < half_plane_size(ctx); ++i) {
    const Point z = vertex_point(ctx, i);
    CHECK(act(ctx, z, affine_inverse(ctx, z)) == kBasePoint);
  }
}

TEST_CASE("orbit sizes") {
  const auto ctx = FieldCtx::create(5);
  const auto orbits = orbit_decomposition(ctx);
  CHECK(orbits.size_of(0) == 1);
  CHECK(orbits.size_of(3) == 1);
  CHECK(orbits.size_of(1) == 6);
  CHECK(orbits.size_of(2) == 6);
  CHECK(orbits.size_of(4) == 6);
}

TEST_CASE("octahedron at q = 3") {
  const auto ctx = FieldCtx::create(3);
  const auto g = build_graph(ctx, 1);
  CHECK(g.size() == 6);
  CHECK(g.degree() == 4);
  CHECK(is_connected(g));
  const auto spec = adjacency_spectrum(g);
  REQUIRE(spec.size() == 3);
  CHECK(spec[0].adjacency == 4.0);
  CHECK(spec[0].multiplicity == 1);
  CHECK(spec[1].adjacency == 0.0);
  CHECK(spec[1].multiplicity == 3);
  CHECK(spec[2].adjacency == -2.0);
  CHECK(spec[2].multiplicity == 2);
  CHECK(spec[2].laplacian == 6.0);
  CHECK(nontrivial_spectral_radius(g) == doctest::Approx(2.0));
}

TEST_CASE("degenerate radii are rejected") {
  const auto ctx = FieldCtx::create(5);
  CHECK_THROWS_AS(build_graph(ctx, 0), InvalidParameter);
  CHECK_THROWS_AS(build_graph(ctx, 3), InvalidParameter);
}

TEST_CASE("adjacency is the distance relation") {
  for (std::int64_t q : {5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r : regular_radii(ctx)) {
      const auto g = build_graph(ctx, r);
      CHECK(g.degree() == static_cast<std::size_t>(q + 1));
      CHECK(g.adjacency() == orbit_adjacency(ctx, r));
      for (std::size_t v = 0; v < g.size(); ++v)
        for (auto w : g.neighbours(v)) CHECK(distance(ctx, g.point_at(v), g.point_at(w)) == r);
    }
  }
}

TEST_CASE("Laplacian rows sum to zero") {
  const auto ctx = FieldCtx::create(7);
  const auto g = build_graph(ctx, regular_radii(ctx).front());
  const Eigen::VectorXd rows = laplacian(g).rowwise().sum();
  CHECK(rows.cwiseAbs().maxCoeff() == 0.0);
}
