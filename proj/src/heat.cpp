#include "fuhp/heat.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "fuhp/errors.hpp"

namespace fuhp {

namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("heat kernel needs t >= 0");
}

}  // namespace

HeatKernelResult heat_kernel_spectral(const SphericalTable& table, double t) {
  require_time(t);
  HeatKernelResult out;
  out.t = t;
  out.params = {table.q, table.delta, table.r_s};
  for (std::size_t k = 0; k < table.radii.size(); ++k) {
    double sum = 0.0;
    for (const auto& row : table.rows)
      sum += row.multiplicity * std::exp(-row.laplace_eigenvalue * t) * row.values[k];
    out.by_radius[table.radii[k]] = sum;
  }
  return out;
}

HeatOracle::HeatOracle(const UhpGraph& g) : ctx_(g.ctx()), r_s_(g.generating_radius()) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  if (solver.info() != Eigen::Success) throw InternalError("Laplacian eigensolver failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

double HeatOracle::spectral_gap() const {
  for (Eigen::Index k = 0; k < values_.size(); ++k)
    if (values_(k) > 1e-8) return values_(k);
  return 0.0;
}

Eigen::MatrixXd HeatOracle::semigroup(double t) const {
  require_time(t);
  const Eigen::VectorXd decay = (-t * values_.array()).exp().matrix();
  return vectors_ * decay.asDiagonal() * vectors_.transpose();
}

Eigen::VectorXd HeatOracle::propagate(const Eigen::VectorXd& f, double t) const {
  require_time(t);
  const Eigen::VectorXd decay = (-t * values_.array()).exp().matrix();
  return vectors_ * decay.asDiagonal() * (vectors_.transpose() * f);
}

HeatKernelResult HeatOracle::kernel(double t, Point base) const {
  const auto n = vectors_.rows();
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  delta(static_cast<Eigen::Index>(vertex_index(ctx_, base))) = static_cast<double>(n);
  const Eigen::VectorXd e = propagate(delta, t);

  HeatKernelResult out;
  out.t = t;
  out.params = {ctx_.q(), ctx_.delta(), r_s_};
  out.by_vertex = std::vector<double>(e.data(), e.data() + e.size());
  for (const auto& [r, members] : orbit_decomposition(ctx_).orbits) {
    const double first = e(static_cast<Eigen::Index>(members.front()));
    if (base == kBasePoint)
      for (auto v : members)
        if (std::abs(e(static_cast<Eigen::Index>(v)) - first) > 1e-10 * std::max(1.0, std::abs(first)))
          throw InternalError("heat kernel is not constant on the orbit of radius " + std::to_string(r));
    out.by_radius[r] = first;
  }
  return out;
}

HeatKernelResult heat_kernel_oracle(const UhpGraph& g, double t, Point base) {
  return HeatOracle(g).kernel(t, base);
}

double initial_condition_tolerance(std::int64_t q, double t, double max_abs_f) {
  return std::max(static_cast<double>(q + 1) * 2.0 * t * max_abs_f, 1e-8);
}

std::vector<double> initial_condition_check(const UhpGraph& g, std::span<const double> f,
                                            std::span<const double> t_grid) {
  if (f.size() != g.size()) throw InvalidParameter("test function has the wrong number of vertices");
  const HeatOracle oracle(g);
  const Eigen::Map<const Eigen::VectorXd> fv(f.data(), static_cast<Eigen::Index>(f.size()));
  const double f_base = f[vertex_index(g.ctx(), kBasePoint)];
  std::vector<double> out;
  for (double t : t_grid) {
    const auto e = oracle.kernel(t);
    const Eigen::Map<const Eigen::VectorXd> ev(e.by_vertex->data(), static_cast<Eigen::Index>(e.by_vertex->size()));
    out.push_back(std::abs(ev.dot(fv) / static_cast<double>(g.size()) - f_base));
  }
  return out;
}

FourierReport fourier_coefficient_check(const SphericalTable& table, const HeatKernelResult& kernel) {
  FourierReport rep;
  rep.t = kernel.t;
  const double n = static_cast<double>(table.vertex_count());
  for (const auto& row : table.rows) {
    double sum = 0.0;
    for (std::size_t k = 0; k < table.radii.size(); ++k)
      sum += static_cast<double>(table.orbit_sizes[k]) * kernel.by_radius.at(table.radii[k]) * row.values[k];
    const double measured = row.multiplicity / n * sum;
    const double expected = row.multiplicity * std::exp(-row.laplace_eigenvalue * kernel.t);
    rep.measured.push_back(measured);
    rep.expected.push_back(expected);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(measured - expected));
  }
  rep.passed = rep.max_deviation <= 1e-9;
  return rep;
}

FourierReport fourier_coefficient_check(const SphericalTable& table, double t) {
  return fourier_coefficient_check(table, heat_kernel_spectral(table, t));
}

}  // namespace fuhp
