#include "fuhp/uhp_graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "fuhp/errors.hpp"

namespace fuhp {

std::size_t half_plane_size(const FieldCtx& ctx) {
  return static_cast<std::size_t>(ctx.q() * (ctx.q() - 1));
}

std::size_t vertex_index(const FieldCtx& ctx, Point z) {
  return static_cast<std::size_t>((z.y - 1) * ctx.q() + z.x);
}

Point vertex_point(const FieldCtx& ctx, std::size_t index) {
  const auto i = static_cast<std::int64_t>(index);
  return {i % ctx.q(), i / ctx.q() + 1};
}

Point act(const FieldCtx& ctx, Point z, Point s) {
  return {ctx.add(ctx.mul(z.y, s.x), z.x), ctx.mul(z.y, s.y)};
}

Point affine_inverse(const FieldCtx& ctx, Point z) {
  const Residue yi = ctx.inv(z.y);
  return {ctx.neg(ctx.mul(z.x, yi)), yi};
}

Residue distance(const FieldCtx& ctx, Point z, Point w) {
  const Residue n = ctx.ext_norm({ctx.sub(z.x, w.x), ctx.sub(z.y, w.y)});
  return ctx.div(n, ctx.mul(z.y, w.y));
}

Residue antipodal_radius(const FieldCtx& ctx) { return ctx.mul(4, ctx.delta()); }

bool is_degenerate_radius(const FieldCtx& ctx, Residue r) {
  r = ctx.reduce(r);
  return r == 0 || r == antipodal_radius(ctx);
}

std::vector<Residue> regular_radii(const FieldCtx& ctx) {
  std::vector<Residue> out;
  for (Residue r = 0; r < ctx.q(); ++r)
    if (!is_degenerate_radius(ctx, r)) out.push_back(r);
  return out;
}

std::vector<Residue> radii_order(const FieldCtx& ctx) {
  std::vector<Residue> out{0, antipodal_radius(ctx)};
  for (auto r : regular_radii(ctx)) out.push_back(r);
  return out;
}

std::vector<Point> sphere(const FieldCtx& ctx, Residue r) {
  r = ctx.reduce(r);
  std::vector<Point> out;
  for (Residue y = 1; y < ctx.q(); ++y) {
    const Residue ym1 = ctx.sub(y, 1);
    const Residue rhs = ctx.add(ctx.mul(r, y), ctx.mul(ctx.delta(), ctx.mul(ym1, ym1)));
    for (Residue x = 0; x < ctx.q(); ++x)
      if (ctx.mul(x, x) == rhs) out.push_back({x, y});
  }
  return out;
}

UhpGraph build_graph(const FieldCtx& ctx, Residue r_s) {
  r_s = ctx.reduce(r_s);
  if (is_degenerate_radius(ctx, r_s))
    throw InvalidParameter("degenerate generating radius " + std::to_string(r_s) +
                           ": radii 0 and 4*delta = " + std::to_string(antipodal_radius(ctx)) +
                           " give one-point spheres");

  UhpGraph g(ctx, r_s);
  g.generators_ = sphere(ctx, r_s);
  for (const auto& s : g.generators_) {
    const Point si = affine_inverse(ctx, s);
    if (!std::binary_search(g.generators_.begin(), g.generators_.end(), si,
                            [](Point a, Point b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); }))
      throw InternalError("generating set S_r is not closed under inversion");
  }

  const std::size_t n = half_plane_size(ctx);
  g.neighbours_.resize(n);
  g.adjacency_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) {
    const Point z = vertex_point(ctx, v);
    for (const auto& s : g.generators_) {
      const std::size_t w = vertex_index(ctx, act(ctx, z, s));
      g.neighbours_[v].push_back(w);
      g.adjacency_(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) += 1.0;
    }
    std::sort(g.neighbours_[v].begin(), g.neighbours_[v].end());
  }
  return g;
}

Eigen::MatrixXd laplacian(const UhpGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  return static_cast<double>(g.ctx().q() + 1) * Eigen::MatrixXd::Identity(n, n) - g.adjacency();
}

bool is_connected(const UhpGraph& g) {
  std::vector<bool> seen(g.size(), false);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop();
    for (auto w : g.neighbours(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      ++count;
      todo.push(w);
    }
  }
  return count == g.size();
}

Eigen::MatrixXd orbit_adjacency(const FieldCtx& ctx, Residue r) {
  r = ctx.reduce(r);
  const std::size_t n = half_plane_size(ctx);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (distance(ctx, vertex_point(ctx, i), vertex_point(ctx, j)) == r)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return a;
}

std::size_t OrbitDecomposition::size_of(Residue r) const {
  auto it = orbits.find(r);
  return it == orbits.end() ? 0 : it->second.size();
}

OrbitDecomposition orbit_decomposition(const FieldCtx& ctx) {
  OrbitDecomposition out;
  for (Residue r = 0; r < ctx.q(); ++r) out.orbits[r];
  const std::size_t n = half_plane_size(ctx);
  for (std::size_t v = 0; v < n; ++v)
    out.orbits[distance(ctx, vertex_point(ctx, v), kBasePoint)].push_back(v);
  return out;
}

std::vector<SpectrumEntry> adjacency_spectrum(const UhpGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("adjacency eigensolver failed");
  std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(vals.begin(), vals.end(), std::greater<>());

  const double degree = static_cast<double>(g.degree());
  std::vector<SpectrumEntry> out;
  std::size_t i = 0;
  while (i < vals.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < vals.size() && vals[i] - vals[j] <= 1e-8) sum += vals[j++];
    double mean = sum / static_cast<double>(j - i);
    if (std::abs(mean - std::round(mean)) <= 1e-9) mean = std::round(mean) + 0.0;
    out.push_back({mean, degree - mean, static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

double nontrivial_spectral_radius(const UhpGraph& g) {
  const double degree = static_cast<double>(g.degree());
  double worst = 0.0;
  for (const auto& e : adjacency_spectrum(g)) {
    int m = e.multiplicity;
    if (std::abs(e.adjacency - degree) <= 1e-8) --m;
    if (m > 0) worst = std::max(worst, std::abs(e.adjacency));
  }
  return worst;
}

}  // namespace fuhp
