#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fuhp/spherical.hpp"
#include "fuhp/uhp_graph.hpp"

namespace fuhp {

struct HeatParams {
  std::int64_t q = 0;
  Residue delta = 0;
  Residue r_s = 0;

  friend bool operator==(const HeatParams&, const HeatParams&) = default;
};

/// E(t; r) per radius and, for the matrix-exponential path, per vertex.
struct HeatKernelResult {
  double t = 0.0;
  std::map<Residue, double> by_radius;
  std::optional<std::vector<double>> by_vertex;
  HeatParams params;
};

/// E(t; r) = sum_i d_i exp(-lambda_i t) omega_i(r). Throws DomainError for t < 0.
HeatKernelResult heat_kernel_spectral(const SphericalTable& table, double t);

/**
 * Matrix-exponential heat semigroup exp(-t Delta) of one graph, from a single
 * symmetric eigendecomposition. Safe to share between threads once built.
 */
class HeatOracle {
 public:
  explicit HeatOracle(const UhpGraph& g);

  const FieldCtx& ctx() const { return ctx_; }
  Residue generating_radius() const { return r_s_; }
  const Eigen::VectorXd& laplace_eigenvalues() const { return values_; }
  /// Smallest eigenvalue above 1e-8.
  double spectral_gap() const;

  Eigen::MatrixXd semigroup(double t) const;
  Eigen::VectorXd propagate(const Eigen::VectorXd& f, double t) const;

  /// q(q-1) exp(-t Delta) 1_base, with by_radius read off the orbits of
  /// sqrt(delta). Orbit constancy is asserted only for base == sqrt(delta).
  HeatKernelResult kernel(double t, Point base = kBasePoint) const;

 private:
  FieldCtx ctx_;
  Residue r_s_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

HeatKernelResult heat_kernel_oracle(const UhpGraph& g, double t, Point base = kBasePoint);

/// |(1/(q(q-1))) sum_x E(t; x) f(x) - f(base)| for each t of the grid.
std::vector<double> initial_condition_check(const UhpGraph& g, std::span<const double> f,
                                            std::span<const double> t_grid);

/// (q+1) * 2 * t * max|f|, floored at 1e-8.
double initial_condition_tolerance(std::int64_t q, double t, double max_abs_f);

struct FourierReport {
  double t = 0.0;
  std::vector<double> measured;  // per table row
  std::vector<double> expected;  // d_i exp(-lambda_i t)
  double max_deviation = 0.0;
  bool passed = false;
};

/// a_i(t) = (d_i / (q(q-1))) sum_r |S_r| E(t; r) omega_i(r), compared with
/// d_i exp(-lambda_i t) to 1e-9. Uses the given kernel, or the spectral one.
FourierReport fourier_coefficient_check(const SphericalTable& table, double t);
FourierReport fourier_coefficient_check(const SphericalTable& table, const HeatKernelResult& kernel);

/// 2x2 matrix [[a, b], [c, d]] over F_q.
struct Mat2 {
  Residue a = 1, b = 0, c = 0, d = 1;

  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const FieldCtx& ctx, const Mat2& x, const Mat2& y);
Residue mat_det(const FieldCtx& ctx, const Mat2& m);

/// g . sqrt(delta) under fractional-linear action, as a point of H_q.
Point project(const FieldCtx& ctx, const Mat2& g);

/// Cayley graph on GL(2, F_q) generated by pi^{-1}(S_{r_s}).
struct GroupGraph {
  std::vector<Mat2> elements;                // lexicographic (a, b, c, d)
  std::vector<std::size_t> stabilizer;       // indices of K = {[[a, delta b], [b, a]]}
  std::vector<std::size_t> generators;       // indices of S_GL
  std::vector<std::size_t> coset_of;         // element -> vertex index of its projection
  std::size_t identity = 0;
  Eigen::MatrixXd adjacency;

  std::size_t index_of(const Mat2& m) const;
};

/// Throws InternalError if S_GL is not closed under inversion.
GroupGraph build_group_graph(const FieldCtx& ctx, Residue r_s);

struct ImagesRow {
  double t = 0.0;
  double max_deviation = 0.0;
};

struct ImagesReport {
  std::size_t group_order = 0;
  std::size_t stabilizer_order = 0;
  std::size_t generator_count = 0;
  /// Least-squares factor c with A_GL (f o pi) = c (A_H f) o pi; |K| when the lift is exact.
  double measured_scaling = 0.0;
  std::vector<ImagesRow> rows;
  double max_deviation = 0.0;
  bool passed = false;
};

/// K-average of the lifted kernel vs. the H_q oracle kernel at each t, tolerance 1e-8.
ImagesReport method_of_images_check(const FieldCtx& ctx, Residue r_s, std::span<const double> t_grid);

}  // namespace fuhp
