#include "fuhp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fuhp/characters.hpp"
#include "fuhp/errors.hpp"
#include "fuhp/heat.hpp"
#include "fuhp/theta.hpp"

namespace fuhp {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> VerifyReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(&c);
  return out;
}

std::vector<double> standard_time_grid() { return {0.0, 0.01, 0.1, 1.0, 10.0}; }

SphericalInvariants spherical_invariants(const SphericalTable& table) {
  SphericalInvariants inv;
  const double n = static_cast<double>(table.vertex_count());
  const std::size_t base = table.radius_position(0);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& ri = table.rows[i];
    inv.base_value_residual = std::max(inv.base_value_residual, std::abs(ri.values[base] - 1.0));
    inv.multiplicity_sum += ri.multiplicity;
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < table.radii.size(); ++k)
        s += static_cast<double>(table.orbit_sizes[k]) * ri.values[k] * table.rows[j].values[k];
      const double expected = i == j ? n / ri.multiplicity : 0.0;
      inv.orthogonality_residual = std::max(inv.orthogonality_residual, std::abs(s - expected));
    }
  }
  for (std::size_t k = 0; k < table.radii.size(); ++k) {
    double s = 0.0;
    for (const auto& row : table.rows) s += row.multiplicity * row.values[k];
    const double expected = table.radii[k] == 0 ? n : 0.0;
    inv.reconstruction_residual = std::max(inv.reconstruction_residual, std::abs(s - expected));
  }
  return inv;
}

HeatComparison compare_heat(const UhpGraph& g, const SphericalTable& table, const std::vector<double>& t_grid) {
  const HeatOracle oracle(g);
  const double n = static_cast<double>(g.size());
  HeatComparison cmp;
  cmp.min_value = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const auto spectral = heat_kernel_spectral(table, t);
    const auto exact = oracle.kernel(t);
    double mass = 0.0;
    for (std::size_t k = 0; k < table.radii.size(); ++k) {
      const Residue r = table.radii[k];
      const double e = spectral.by_radius.at(r);
      cmp.max_oracle_deviation = std::max(cmp.max_oracle_deviation, std::abs(e - exact.by_radius.at(r)));
      cmp.min_value = std::min(cmp.min_value, e);
      mass += static_cast<double>(table.orbit_sizes[k]) * e;
    }
    cmp.max_mass_residual = std::max(cmp.max_mass_residual, std::abs(mass / n - 1.0));
  }
  return cmp;
}

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

class Battery {
 public:
  explicit Battery(VerifyReport& rep) : rep_(rep) {}

  void at_most(const std::string& suite, const std::string& name, double measured, double tol) {
    rep_.checks.push_back({suite, name, measured <= tol, measured, tol});
  }
  void at_least(const std::string& suite, const std::string& name, double measured, double floor) {
    rep_.checks.push_back({suite, name, measured >= floor, measured, floor});
  }
  void holds(const std::string& suite, const std::string& name, bool ok) {
    rep_.checks.push_back({suite, name, ok, ok ? 1.0 : 0.0, 1.0});
  }
  void finding(const std::string& name, const std::string& detail) { rep_.findings.push_back({name, detail}); }

 private:
  VerifyReport& rep_;
};

void verify_radius(Battery& b, const FieldCtx& ctx, Residue r_s, const std::string& tag) {
  const UhpGraph g = build_graph(ctx, r_s);
  b.holds("uhp_graph", tag + " degree q+1", g.degree() == static_cast<std::size_t>(ctx.q() + 1));
  b.holds("uhp_graph", tag + " adjacency symmetric", g.adjacency().isApprox(g.adjacency().transpose(), 0.0));
  if (!is_connected(g)) b.finding(tag + " connectivity", "graph is disconnected");

  const double ramanujan = nontrivial_spectral_radius(g);
  const double bound = 2.0 * std::sqrt(static_cast<double>(ctx.q()));
  b.finding(tag + " ramanujan", fmt("max |lambda| = %.10f", ramanujan) + fmt(", bound 2 sqrt(q) = %.10f", bound) +
                                    (ramanujan <= bound + 1e-9 ? " (holds)" : " (VIOLATED)"));

  const SphericalTable table = radial_eigenbasis(g);
  b.holds("spherical", tag + " q spherical functions", table.rows.size() == static_cast<std::size_t>(ctx.q()));
  const auto inv = spherical_invariants(table);
  b.at_most("spherical", tag + " omega(0) = 1", inv.base_value_residual, 1e-12);
  b.holds("spherical", tag + " sum d_i = q(q-1)", inv.multiplicity_sum == ctx.q() * (ctx.q() - 1));
  b.at_most("spherical", tag + " orthogonality", inv.orthogonality_residual, kOrthogonalityTolerance);
  b.at_most("spherical", tag + " delta reconstruction", inv.reconstruction_residual, kReconstructionTolerance);

  const MatchReport match = match_formulas_to_oracle(ctx, table, false);
  b.at_most("spherical", tag + " principal formulas", match.principal_max_deviation, kMatchTolerance);
  b.at_most("spherical", tag + " cuspidal formulas", match.cuspidal_max_deviation, kMatchTolerance);
  b.holds("spherical", tag + " unique row per class", match.rows_unique);
  for (const auto& f : match.failures) b.finding(tag + " match", f);

  const auto grid = standard_time_grid();
  const auto heat = compare_heat(g, table, grid);
  b.at_most("heat", tag + " spectral vs oracle", heat.max_oracle_deviation, kOracleTolerance);
  b.at_most("heat", tag + " mass conservation", heat.max_mass_residual, kMassTolerance);
  b.at_least("heat", tag + " positivity", heat.min_value, kPositivityFloor);
  double fourier = 0.0;
  for (double t : grid) fourier = std::max(fourier, fourier_coefficient_check(table, t).max_deviation);
  b.at_most("heat", tag + " fourier coefficients", fourier, kOracleTolerance);

  if (!match.passed) return;
  double theta_err = 0.0;
  std::string verbatim_detail = "max deviation from the heat kernel by t:";
  bool two_valued = true;
  for (double t : grid) {
    double verbatim_dev = 0.0;
    const auto spectral = heat_kernel_spectral(table, t);
    for (auto r : table.radii) {
      const double rec = finite_theta(ctx, table, match, r, t, ThetaMode::Reconciled).real();
      theta_err = std::max(theta_err, std::abs(rec - spectral.by_radius.at(r)));
      if (r == 1) continue;
      const Complex verb = finite_theta(ctx, table, match, r, t, ThetaMode::Verbatim);
      verbatim_dev = std::max(verbatim_dev, std::abs(verb - spectral.by_radius.at(r)));
    }
    verbatim_detail += fmt(" t=%g", t) + fmt(": %.3g", verbatim_dev);
  }
  for (auto r : table.radii)
    if (r != 1) two_valued = two_valued && verbatim_phase_is_two_valued(ctx, r);
  b.at_most("theta", tag + " reconciled vs spectral", theta_err, kThetaTolerance);
  b.holds("theta", tag + " verbatim phase two-valued", two_valued);
  b.finding(tag + " verbatim theta", verbatim_detail);
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  VerifyReport rep;
  Battery b(rep);
  for (auto q : opts.q_list) {
    const FieldCtx ctx = FieldCtx::create(q, opts.delta);
    const std::string qtag = "q=" + std::to_string(q);

    const auto orth = character_orthogonality_check(ctx);
    b.at_most("characters", qtag + " orthogonality", orth.max_residual, 1e-12);
    b.holds("ff_core", qtag + " |U| = q+1", norm_one_subgroup(ctx).size() == static_cast<std::size_t>(q + 1));
    const auto orbits = orbit_decomposition(ctx);
    std::size_t total = 0;
    for (const auto& [r, members] : orbits.orbits) total += members.size();
    b.holds("uhp_graph", qtag + " orbits partition H_q", total == half_plane_size(ctx));

    for (auto r_s : regular_radii(ctx))
      verify_radius(b, ctx, r_s, qtag + " r_s=" + std::to_string(r_s));

    if (opts.include_lift) {
      if (q > opts.max_lift_q) {
        b.finding(qtag + " lift", "skipped: q above the lift size limit");
        continue;
      }
      const std::vector<double> grid{0.1, 1.0, 5.0};
      const auto r_s = regular_radii(ctx).front();
      const auto images = method_of_images_check(ctx, r_s, grid);
      const std::string tag = qtag + " r_s=" + std::to_string(r_s);
      b.at_most("lift", tag + " K-averaged kernel", images.max_deviation, 1e-8);
      b.at_most("lift", tag + " lifted adjacency scaling",
                std::abs(images.measured_scaling - static_cast<double>(images.stabilizer_order)), 1e-9);
      b.holds("lift", tag + " |S_GL| = (q+1)|K|",
              images.generator_count == static_cast<std::size_t>(q + 1) * images.stabilizer_order);
    }
  }
  return rep;
}

}  // namespace fuhp
