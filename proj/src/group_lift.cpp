#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "fuhp/errors.hpp"
#include "fuhp/heat.hpp"

namespace fuhp {

Mat2 mat_mul(const FieldCtx& ctx, const Mat2& x, const Mat2& y) {
  return {ctx.add(ctx.mul(x.a, y.a), ctx.mul(x.b, y.c)), ctx.add(ctx.mul(x.a, y.b), ctx.mul(x.b, y.d)),
          ctx.add(ctx.mul(x.c, y.a), ctx.mul(x.d, y.c)), ctx.add(ctx.mul(x.c, y.b), ctx.mul(x.d, y.d))};
}

Residue mat_det(const FieldCtx& ctx, const Mat2& m) { return ctx.sub(ctx.mul(m.a, m.d), ctx.mul(m.b, m.c)); }

Point project(const FieldCtx& ctx, const Mat2& g) {
  const ExtElement num{g.b, g.a};
  const ExtElement den{g.d, g.c};
  const ExtElement w = ctx.ext_mul(num, ctx.ext_inv(den));
  return {w.a, w.b};
}

std::size_t GroupGraph::index_of(const Mat2& m) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), m);
  if (it == elements.end() || *it != m) throw InvalidParameter("matrix is not invertible");
  return static_cast<std::size_t>(it - elements.begin());
}

GroupGraph build_group_graph(const FieldCtx& ctx, Residue r_s) {
  r_s = ctx.reduce(r_s);
  if (is_degenerate_radius(ctx, r_s)) throw InvalidParameter("degenerate generating radius");
  const std::int64_t q = ctx.q();

  GroupGraph gg;
  for (Residue a = 0; a < q; ++a)
    for (Residue b = 0; b < q; ++b)
      for (Residue c = 0; c < q; ++c)
        for (Residue d = 0; d < q; ++d) {
          const Mat2 m{a, b, c, d};
          if (mat_det(ctx, m) != 0) gg.elements.push_back(m);
        }
  gg.identity = gg.index_of(Mat2{});

  for (std::size_t i = 0; i < gg.elements.size(); ++i) {
    const Mat2& m = gg.elements[i];
    const Point z = project(ctx, m);
    gg.coset_of.push_back(vertex_index(ctx, z));
    if (m.d == m.a && m.b == ctx.mul(ctx.delta(), m.c)) gg.stabilizer.push_back(i);
    if (distance(ctx, z, kBasePoint) == r_s) gg.generators.push_back(i);
  }

  for (auto s : gg.generators) {
    const Mat2& m = gg.elements[s];
    const Residue di = ctx.inv(mat_det(ctx, m));
    const Mat2 inv{ctx.mul(m.d, di), ctx.mul(ctx.neg(m.b), di), ctx.mul(ctx.neg(m.c), di), ctx.mul(m.a, di)};
    if (!std::binary_search(gg.generators.begin(), gg.generators.end(), gg.index_of(inv)))
      throw InternalError("lifted generating set is not closed under inversion");
  }

  const auto n = static_cast<Eigen::Index>(gg.elements.size());
  gg.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < gg.elements.size(); ++i)
    for (auto s : gg.generators)
      gg.adjacency(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(gg.index_of(mat_mul(ctx, gg.elements[i], gg.elements[s])))) += 1.0;
  return gg;
}

ImagesReport method_of_images_check(const FieldCtx& ctx, Residue r_s, std::span<const double> t_grid) {
  const UhpGraph h = build_graph(ctx, r_s);
  const GroupGraph gg = build_group_graph(ctx, r_s);
  const HeatOracle oracle(h);
  const std::int64_t q = ctx.q();

  ImagesReport rep;
  rep.group_order = gg.elements.size();
  rep.stabilizer_order = gg.stabilizer.size();
  rep.generator_count = gg.generators.size();
  const double k_order = static_cast<double>(rep.stabilizer_order);
  const auto n = static_cast<Eigen::Index>(rep.group_order);

  {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd f(static_cast<Eigen::Index>(h.size()));
    for (Eigen::Index v = 0; v < f.size(); ++v) f(v) = unif(rng);
    const Eigen::VectorXd af = h.adjacency() * f;
    Eigen::VectorXd lifted(n), lifted_af(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      lifted(i) = f(static_cast<Eigen::Index>(gg.coset_of[static_cast<std::size_t>(i)]));
      lifted_af(i) = af(static_cast<Eigen::Index>(gg.coset_of[static_cast<std::size_t>(i)]));
    }
    rep.measured_scaling = (gg.adjacency * lifted).dot(lifted_af) / lifted_af.squaredNorm();
  }

  const Eigen::MatrixXd lap =
      (static_cast<double>(q + 1) * k_order * Eigen::MatrixXd::Identity(n, n) - gg.adjacency) / k_order;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw InternalError("group Laplacian eigensolver failed");
  const Eigen::MatrixXd& vecs = solver.eigenvectors();

  for (double t : t_grid) {
    const Eigen::VectorXd decay = (-t * solver.eigenvalues().array()).exp().matrix();
    // |GL| exp(-t L) 1_e
    const Eigen::VectorXd group_kernel =
        static_cast<double>(n) * (vecs * decay.asDiagonal() * vecs.row(static_cast<Eigen::Index>(gg.identity)).transpose());
    const auto quotient = oracle.kernel(t);

    ImagesRow row{t, 0.0};
    for (std::size_t v = 0; v < h.size(); ++v) {
      const Point z = vertex_point(ctx, v);
      const Mat2 rep_z{z.y, z.x, 0, 1};
      double avg = 0.0;
      for (auto k : gg.stabilizer)
        avg += group_kernel(static_cast<Eigen::Index>(gg.index_of(mat_mul(ctx, rep_z, gg.elements[k]))));
      avg /= k_order;
      row.max_deviation = std::max(row.max_deviation, std::abs(avg - (*quotient.by_vertex)[v]));
    }
    rep.max_deviation = std::max(rep.max_deviation, row.max_deviation);
    rep.rows.push_back(row);
  }
  rep.passed = rep.max_deviation <= 1e-8;
  return rep;
}

}  // namespace fuhp
