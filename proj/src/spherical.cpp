#include "fuhp/spherical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>
#include <sstream>

#include "fuhp/errors.hpp"

namespace fuhp {

namespace {

constexpr double kClusterTolerance = 1e-8;
constexpr double kOrbitTolerance = 1e-10;

/// Groups consecutive (ascending) eigenvalues closer than kClusterTolerance.
std::vector<std::vector<Eigen::Index>> cluster(const Eigen::VectorXd& values) {
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (groups.empty() || std::abs(values(k) - values(groups.back().back())) > kClusterTolerance)
      groups.emplace_back();
    groups.back().push_back(k);
  }
  return groups;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(idx[c]);
  return out;
}

/// A_r * basis, using A_r f(z) = sum_{s in S_r} f(z s).
Eigen::MatrixXd apply_orbit_operator(const FieldCtx& ctx, const std::vector<Point>& shell,
                                     const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.rows(), basis.cols());
  for (Eigen::Index v = 0; v < basis.rows(); ++v) {
    const Point z = vertex_point(ctx, static_cast<std::size_t>(v));
    for (const auto& s : shell) out.row(v) += basis.row(static_cast<Eigen::Index>(vertex_index(ctx, act(ctx, z, s))));
  }
  return out;
}

struct Eigenspace {
  Eigen::MatrixXd basis;
  double adjacency_eigenvalue;
};

}  // namespace

std::size_t SphericalTable::radius_position(Residue r) const {
  auto it = std::find(radii.begin(), radii.end(), r);
  if (it == radii.end()) throw InvalidParameter("radius " + std::to_string(r) + " not in table");
  return static_cast<std::size_t>(it - radii.begin());
}

SphericalTable radial_eigenbasis(const UhpGraph& g) {
  const FieldCtx& ctx = g.ctx();
  const std::int64_t q = ctx.q();

  SphericalTable table;
  table.q = q;
  table.delta = ctx.delta();
  table.r_s = g.generating_radius();
  table.radii = radii_order(ctx);
  const auto orbits = orbit_decomposition(ctx);
  for (auto r : table.radii) table.orbit_sizes.push_back(orbits.size_of(r));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency());
  if (solver.info() != Eigen::Success) throw InternalError("adjacency eigensolver failed");

  std::vector<Eigenspace> spaces;
  for (const auto& grp : cluster(solver.eigenvalues())) {
    double mean = 0.0;
    for (auto k : grp) mean += solver.eigenvalues()(k);
    spaces.push_back({columns(solver.eigenvectors(), grp), mean / static_cast<double>(grp.size())});
  }
  table.distinct_adjacency_eigenvalues = spaces.size();

  // Split merged eigenspaces with the other orbit operators until there is
  // one space per K-orbit.
  for (auto r : table.radii) {
    if (spaces.size() >= static_cast<std::size_t>(q)) break;
    if (r == 0 || r == table.r_s) continue;
    const auto shell = sphere(ctx, r);
    std::vector<Eigenspace> refined;
    for (auto& sp : spaces) {
      if (sp.basis.cols() == 1) {
        refined.push_back(std::move(sp));
        continue;
      }
      Eigen::MatrixXd b = sp.basis.transpose() * apply_orbit_operator(ctx, shell, sp.basis);
      b = 0.5 * (b + b.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sub(b);
      const Eigen::MatrixXd rotated = sp.basis * sub.eigenvectors();
      for (const auto& grp : cluster(sub.eigenvalues()))
        refined.push_back({columns(rotated, grp), sp.adjacency_eigenvalue});
    }
    spaces = std::move(refined);
  }

  const auto base = static_cast<Eigen::Index>(vertex_index(ctx, kBasePoint));
  for (const auto& sp : spaces) {
    const Eigen::VectorXd proj = sp.basis * sp.basis.row(base).transpose();
    const double at_base = proj(base);
    if (std::abs(at_base) < 1e-12) throw InternalError("eigenprojection vanishes at the base point");
    const Eigen::VectorXd omega = proj / at_base;

    SphericalRow row;
    row.multiplicity = static_cast<int>(sp.basis.cols());
    row.adjacency_eigenvalue = sp.adjacency_eigenvalue;
    row.laplace_eigenvalue = static_cast<double>(q + 1) - sp.adjacency_eigenvalue;
    for (auto r : table.radii) {
      const auto& members = orbits.orbits.at(r);
      const double first = omega(static_cast<Eigen::Index>(members.front()));
      for (auto v : members)
        if (std::abs(omega(static_cast<Eigen::Index>(v)) - first) > kOrbitTolerance)
          throw InternalError("eigenprojection is not constant on the orbit of radius " + std::to_string(r));
      row.values.push_back(r == 0 ? 1.0 : first);
    }
    table.rows.push_back(std::move(row));
  }

  std::sort(table.rows.begin(), table.rows.end(), [](const SphericalRow& a, const SphericalRow& b) {
    if (std::abs(a.laplace_eigenvalue - b.laplace_eigenvalue) > kClusterTolerance)
      return a.laplace_eigenvalue < b.laplace_eigenvalue;
    for (std::size_t k = 0; k < a.values.size(); ++k)
      if (std::abs(a.values[k] - b.values[k]) > kClusterTolerance) return a.values[k] < b.values[k];
    return false;
  });
  return table;
}

Complex principal_spherical(const FieldCtx& ctx, MultChar chi, Residue r) {
  r = ctx.reduce(r);
  if (r == 0) return 1.0;
  if (r == antipodal_radius(ctx)) return beta(ctx, chi, ctx.neg(1));
  Complex sum = 0.0;
  for (const auto& z : sphere(ctx, r)) sum += beta(ctx, chi, z.y);
  return sum / static_cast<double>(ctx.q() + 1);
}

std::string to_string(CuspidalReading reading) {
  std::string out = reading.coordinate == CuspidalCoordinate::Disk ? "disk" : "literal";
  out += reading.infinity == CuspidalInfinity::MinusNu ? "/-nu(-1)" : "/-nu0(-1)nu(-1)";
  return out;
}

Residue disk_parameter(const FieldCtx& ctx, Residue r) {
  r = ctx.reduce(r);
  if (r == antipodal_radius(ctx)) throw DomainError("radius 4*delta is the point at infinity of the disk coordinate");
  return ctx.div(r, ctx.sub(r, antipodal_radius(ctx)));
}

namespace {

void require_cuspidal(const FieldCtx& ctx, NonDecompChar chi) {
  if (is_self_dual_on_unit_circle(ctx, chi))
    throw InvalidCharacter("cuspidal formula needs nu != nu^{-1} on U (j = " + std::to_string(chi.j) + ")");
}

}  // namespace

Complex cuspidal_closed_form(const FieldCtx& ctx, NonDecompChar chi, Residue rho) {
  require_cuspidal(ctx, chi);
  rho = ctx.reduce(rho);
  if (rho == 1) throw SingularRadius("cuspidal closed form has a pole at 1");
  if (rho == 0) return 1.0;
  const Residue c = ctx.div(ctx.add(1, rho), ctx.sub(1, rho));
  Complex sum = 0.0;
  for (const auto& u : norm_one_subgroup(ctx)) {
    const int e = ctx.quadratic_character(ctx.ext_trace(ctx.ext_sub(u, ctx.embed(c))));
    if (e == 0) continue;
    sum += static_cast<double>(e * nu0(ctx, u)) * nu(ctx, chi, u);
  }
  return sum / static_cast<double>(ctx.q() + 1);
}

Complex cuspidal_spherical(const FieldCtx& ctx, NonDecompChar chi, Residue r, CuspidalReading reading) {
  require_cuspidal(ctx, chi);
  r = ctx.reduce(r);
  if (r == 0) return 1.0;
  if (r == antipodal_radius(ctx)) {
    const ExtElement minus_one = ctx.embed(-1);
    const Complex v = nu(ctx, chi, minus_one);
    return reading.infinity == CuspidalInfinity::MinusNu ? -v : -static_cast<double>(nu0(ctx, minus_one)) * v;
  }
  const Residue rho = reading.coordinate == CuspidalCoordinate::Disk ? disk_parameter(ctx, r) : r;
  return cuspidal_closed_form(ctx, chi, rho);
}

double laplace_eigenvalue(const SphericalTable& table, std::size_t row, Residue r_s) {
  return static_cast<double>(table.q + 1) * (1.0 - table.value(row, r_s));
}

const CharacterMatch* MatchReport::find(SeriesFamily family, std::int64_t index) const {
  for (const auto& m : matches)
    if (m.family == family && m.index == index) return &m;
  return nullptr;
}

std::vector<std::int64_t> principal_class_indices(const FieldCtx& ctx) {
  std::vector<std::int64_t> out;
  for (std::int64_t j = 0; j <= (ctx.q() - 1) / 2; ++j) out.push_back(j);
  return out;
}

std::vector<std::int64_t> cuspidal_class_indices(const FieldCtx& ctx) {
  std::vector<std::int64_t> out;
  for (std::int64_t j = 1; j <= (ctx.q() - 1) / 2; ++j) out.push_back(j);
  return out;
}

namespace {

template <typename Formula>
CharacterMatch best_row(const SphericalTable& table, SeriesFamily family, std::int64_t index, Formula&& formula) {
  CharacterMatch best{family, index, 0, std::numeric_limits<double>::infinity(), {}};
  std::vector<std::pair<std::size_t, Complex>> vals;
  for (std::size_t k = 0; k < table.radii.size(); ++k) {
    try {
      vals.emplace_back(k, formula(table.radii[k]));
    } catch (const SingularRadius&) {
      best.excluded_radii.push_back(table.radii[k]);
    }
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    double dev = 0.0;
    for (const auto& [k, v] : vals) dev = std::max(dev, std::abs(v - table.rows[i].values[k]));
    if (dev < best.max_deviation) {
      best.max_deviation = dev;
      best.row = i;
    }
  }
  return best;
}

}  // namespace

MatchReport match_formulas_to_oracle(const FieldCtx& ctx, const SphericalTable& table, bool throw_on_failure) {
  MatchReport rep;

  for (auto j : principal_class_indices(ctx)) {
    auto m = best_row(table, SeriesFamily::Principal, j,
                      [&](Residue r) { return principal_spherical(ctx, MultChar{j}, r); });
    for (auto r : table.radii)
      rep.principal_max_imag = std::max(rep.principal_max_imag, std::abs(principal_spherical(ctx, MultChar{j}, r).imag()));
    rep.principal_max_deviation = std::max(rep.principal_max_deviation, m.max_deviation);
    rep.matches.push_back(std::move(m));
  }

  const std::vector<CuspidalReading> readings{
      {CuspidalCoordinate::Disk, CuspidalInfinity::MinusNu},
      {CuspidalCoordinate::Disk, CuspidalInfinity::MinusNu0Nu},
      {CuspidalCoordinate::Literal, CuspidalInfinity::MinusNu},
      {CuspidalCoordinate::Literal, CuspidalInfinity::MinusNu0Nu},
  };
  std::vector<std::vector<CharacterMatch>> per_reading;
  std::size_t winner = 0;
  for (std::size_t k = 0; k < readings.size(); ++k) {
    ReadingScore score{readings[k], 0.0, {}};
    std::vector<CharacterMatch> ms;
    for (auto j : cuspidal_class_indices(ctx)) {
      auto m = best_row(table, SeriesFamily::Cuspidal, j,
                        [&](Residue r) { return cuspidal_spherical(ctx, NonDecompChar{j}, r, readings[k]); });
      score.max_deviation = std::max(score.max_deviation, m.max_deviation);
      for (auto r : m.excluded_radii)
        if (std::find(score.excluded_radii.begin(), score.excluded_radii.end(), r) == score.excluded_radii.end())
          score.excluded_radii.push_back(r);
      ms.push_back(std::move(m));
    }
    rep.cuspidal_readings.push_back(score);
    per_reading.push_back(std::move(ms));
  }
  // Rank: within tolerance, one-to-one with the principal rows, fewest
  // excluded radii, smallest deviation.
  auto rank = [&](std::size_t k) {
    std::set<std::size_t> used;
    for (const auto& m : rep.matches) used.insert(m.row);
    for (const auto& m : per_reading[k]) used.insert(m.row);
    const auto& sc = rep.cuspidal_readings[k];
    return std::tuple(sc.max_deviation > kMatchTolerance, used.size() != table.rows.size(), sc.excluded_radii.size(),
                      sc.max_deviation);
  };
  for (std::size_t k = 1; k < readings.size(); ++k)
    if (rank(k) < rank(winner)) winner = k;
  rep.chosen_reading = readings[winner];
  rep.cuspidal_max_deviation = rep.cuspidal_readings[winner].max_deviation;
  for (auto& m : per_reading[winner]) rep.matches.push_back(std::move(m));

  std::set<std::size_t> used;
  for (const auto& m : rep.matches) used.insert(m.row);
  rep.rows_unique = used.size() == rep.matches.size() && used.size() == table.rows.size();

  for (const auto& m : rep.matches) {
    if (m.max_deviation <= kMatchTolerance) continue;
    std::ostringstream os;
    os << (m.family == SeriesFamily::Principal ? "principal beta_" : "cuspidal nu_") << m.index
       << " has no oracle row within " << kMatchTolerance << " (best deviation " << m.max_deviation << ")";
    rep.failures.push_back(os.str());
  }
  if (!rep.rows_unique)
    rep.failures.push_back("character classes do not map one-to-one onto the " +
                           std::to_string(table.rows.size()) + " oracle rows");
  rep.passed = rep.failures.empty();

  if (!rep.passed && throw_on_failure) {
    std::string msg = "spherical formula reconciliation failed:";
    for (const auto& f : rep.failures) msg += "\n  " + f;
    throw ReconciliationFailure(msg);
  }
  return rep;
}

MatchReport match_formulas_to_oracle(const FieldCtx& ctx, Residue r_s, bool throw_on_failure) {
  return match_formulas_to_oracle(ctx, radial_eigenbasis(build_graph(ctx, r_s)), throw_on_failure);
}

}  // namespace fuhp
