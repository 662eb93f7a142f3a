#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstddef>
#include <map>
#include <vector>

#include "fuhp/field.hpp"

namespace fuhp {

/// z = x + y*sqrt(delta) in H_q, identified with the affine matrix [[y, x], [0, 1]].
struct Point {
  Residue x = 0;
  Residue y = 1;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// sqrt(delta), the identity of Aff(q).
inline constexpr Point kBasePoint{0, 1};

/// Number of points q(q-1).
std::size_t half_plane_size(const FieldCtx& ctx);

/// Vertex order is (y, x) lexicographic: index = (y-1)*q + x.
std::size_t vertex_index(const FieldCtx& ctx, Point z);
Point vertex_point(const FieldCtx& ctx, std::size_t index);

/// Product of affine matrices z*s, i.e. (y*x_s + x, y*y_s).
Point act(const FieldCtx& ctx, Point z, Point s);
/// Left translation by a group element g: g*z.
inline Point translate(const FieldCtx& ctx, Point g, Point z) { return act(ctx, g, z); }
Point affine_inverse(const FieldCtx& ctx, Point z);

/// N(z - w) / (y_z * y_w).
Residue distance(const FieldCtx& ctx, Point z, Point w);

/// 4*delta, the radius of the antipode -sqrt(delta).
Residue antipodal_radius(const FieldCtx& ctx);
bool is_degenerate_radius(const FieldCtx& ctx, Residue r);
/// Radii 0, 4*delta, then the regular radii ascending.
std::vector<Residue> radii_order(const FieldCtx& ctx);
std::vector<Residue> regular_radii(const FieldCtx& ctx);

/// Points with x^2 = r*y + delta*(y-1)^2, y != 0, sorted by (y, x).
std::vector<Point> sphere(const FieldCtx& ctx, Residue r);

/// Cayley graph on H_q generated by the sphere S_{r_s}.
class UhpGraph {
 public:
  const FieldCtx& ctx() const { return ctx_; }
  Residue generating_radius() const { return r_s_; }
  std::size_t size() const { return neighbours_.size(); }
  std::size_t degree() const { return generators_.size(); }
  const std::vector<Point>& generators() const { return generators_; }
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return neighbours_[v]; }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  std::size_t index_of(Point z) const { return vertex_index(ctx_, z); }
  Point point_at(std::size_t v) const { return vertex_point(ctx_, v); }

 private:
  friend UhpGraph build_graph(const FieldCtx& ctx, Residue r_s);
  UhpGraph(FieldCtx ctx, Residue r_s) : ctx_(std::move(ctx)), r_s_(r_s) {}

  FieldCtx ctx_;
  Residue r_s_;
  std::vector<Point> generators_;
  std::vector<std::vector<std::size_t>> neighbours_;
  Eigen::MatrixXd adjacency_;
};

/// Throws InvalidParameter for the degenerate radii 0 and 4*delta.
UhpGraph build_graph(const FieldCtx& ctx, Residue r_s);

/// (q+1) I - A.
Eigen::MatrixXd laplacian(const UhpGraph& g);

bool is_connected(const UhpGraph& g);

struct SpectrumEntry {
  double adjacency = 0.0;
  double laplacian = 0.0;
  int multiplicity = 0;
};

/// Distinct adjacency eigenvalues, descending, clustered at 1e-8. Values
/// within 1e-9 of an integer are printed as that integer.
std::vector<SpectrumEntry> adjacency_spectrum(const UhpGraph& g);

/// Largest |lambda| over adjacency eigenvalues other than the degree.
double nontrivial_spectral_radius(const UhpGraph& g);

/// 0/1 matrix of the relation distance(z, w) == r; the Hecke operator of radius r.
Eigen::MatrixXd orbit_adjacency(const FieldCtx& ctx, Residue r);

struct OrbitDecomposition {
  /// radius -> sorted vertex indices at that distance from sqrt(delta)
  std::map<Residue, std::vector<std::size_t>> orbits;

  std::size_t size_of(Residue r) const;
};

OrbitDecomposition orbit_decomposition(const FieldCtx& ctx);

}  // namespace fuhp
