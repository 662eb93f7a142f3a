// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "fuhp/heat.hpp"
#include "fuhp/spherical.hpp"
#include "fuhp/theta.hpp"
#include "fuhp/verify.hpp"

using namespace fuhp;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome closed_form_q3() {
  const auto start = Clock::now();
  const auto ctx = FieldCtx::create(3);
  const auto table = radial_eigenbasis(build_graph(ctx, 1));
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 5.0}) {
    const auto e = heat_kernel_spectral(table, t);
    const double a = std::exp(-4 * t), b = std::exp(-6 * t);
    worst = std::max(worst, std::abs(e.by_radius.at(0) - (1 + 3 * a + 2 * b)));
    worst = std::max(worst, std::abs(e.by_radius.at(1) - (1 - b)));
    worst = std::max(worst, std::abs(e.by_radius.at(2) - (1 - 3 * a + 2 * b)));
  }
  const double secs = seconds_since(start);
  return {ctx.delta() == 2 && worst <= 1e-12 && secs < 1.0,
          fmt("max error %.3g", worst) + fmt(", %.3f s", secs)};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const std::vector<double> grid{0.0, 0.01, 0.1, 1.0, 10.0};
  double worst = 0.0;
  int runs = 0;
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto g = build_graph(ctx, r_s);
      worst = std::max(worst, compare_heat(g, radial_eigenbasis(g), grid).max_oracle_deviation);
      ++runs;
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-9 && secs < 30.0,
          std::to_string(runs) + " graphs" + fmt(", max deviation %.3g", worst) + fmt(", %.2f s", secs)};
}

Outcome initial_condition() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double t = 1e-6;
  double worst_ratio = 0.0;
  bool ok = true;
  for (std::int64_t q : {3, 5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto g = build_graph(ctx, r_s);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> f(g.size());
        const double scale = 1.0 + 9.0 * (unif(rng) + 1.0) / 2.0;
        double maxf = 0.0;
        for (auto& x : f) {
          x = scale * unif(rng);
          maxf = std::max(maxf, std::abs(x));
        }
        const double residual = initial_condition_check(g, f, std::vector<double>{t}).front();
        const double tol = static_cast<double>(q + 1) * 2.0 * t * maxf + 1e-10;
        ok = ok && residual <= tol;
        worst_ratio = std::max(worst_ratio, residual / tol);
      }
    }
  }
  return {ok, fmt("worst residual/tolerance %.3g", worst_ratio)};
}

Outcome mass_and_positivity() {
  double mass = 0.0, min_value = std::numeric_limits<double>::infinity();
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto g = build_graph(ctx, r_s);
      const auto cmp = compare_heat(g, radial_eigenbasis(g), standard_time_grid());
      mass = std::max(mass, cmp.max_mass_residual);
      min_value = std::min(min_value, cmp.min_value);
    }
  }
  return {mass <= 1e-10 && min_value >= -1e-12,
          fmt("max |mean - 1| %.3g", mass) + fmt(", min E %.3g", min_value)};
}

Outcome spherical_invariants_all() {
  bool ok = true;
  double orth = 0.0, recon = 0.0, base = 0.0;
  for (std::int64_t q : {3, 5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto inv = spherical_invariants(radial_eigenbasis(build_graph(ctx, r_s)));
      ok = ok && inv.multiplicity_sum == q * (q - 1);
      orth = std::max(orth, inv.orthogonality_residual);
      recon = std::max(recon, inv.reconstruction_residual);
      base = std::max(base, inv.base_value_residual);
    }
  }
  ok = ok && orth <= 1e-10 && recon <= 1e-9 && base <= 1e-12;
  return {ok, fmt("orthogonality %.3g", orth) + fmt(", reconstruction %.3g", recon) +
                  fmt(", |omega(0) - 1| %.3g", base)};
}

Outcome formula_reconciliation() {
  bool ok = true;
  double principal = 0.0, cuspidal = 0.0;
  std::string reading;
  for (std::int64_t q : {5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto rep = match_formulas_to_oracle(ctx, r_s, false);
      ok = ok && rep.passed && rep.rows_unique;
      for (const auto& m : rep.matches)
        if (m.family == SeriesFamily::Cuspidal)
          for (auto r : m.excluded_radii) ok = ok && r == 1;
      principal = std::max(principal, rep.principal_max_deviation);
      cuspidal = std::max(cuspidal, rep.cuspidal_max_deviation);
      reading = to_string(rep.chosen_reading);
    }
  }
  return {ok, fmt("principal %.3g", principal) + fmt(", cuspidal %.3g", cuspidal) + ", reading " + reading};
}

Outcome method_of_images() {
  const std::vector<double> grid{0.1, 1.0, 5.0};
  auto start = Clock::now();
  const auto rep = method_of_images_check(FieldCtx::create(3), 1, grid);
  const double secs = seconds_since(start);
  start = Clock::now();
  const auto rep5 = method_of_images_check(FieldCtx::create(5), 1, grid);
  const double secs5 = seconds_since(start);
  const bool ok = rep.group_order == 48 && rep.max_deviation <= 1e-8 && secs < 5.0;
  return {ok, fmt("q=3 max deviation %.3g", rep.max_deviation) + fmt(" in %.2f s", secs) +
                  fmt("; q=5 (480 elements) %.3g", rep5.max_deviation) + fmt(" in %.2f s", secs5) +
                  (rep5.passed && secs5 < 60.0 ? "" : " (extended run outside bounds)")};
}

Outcome ramanujan() {
  double worst_margin = -std::numeric_limits<double>::infinity();
  int graphs = 0;
  for (std::int64_t q : {5, 7, 13}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const double lam = nontrivial_spectral_radius(build_graph(ctx, r_s));
      worst_margin = std::max(worst_margin, lam - 2.0 * std::sqrt(static_cast<double>(q)));
      ++graphs;
    }
  }
  return {worst_margin <= 1e-9,
          std::to_string(graphs) + " graphs" + fmt(", max(|lambda| - 2 sqrt q) = %.4g", worst_margin)};
}

Outcome theta_audit() {
  double rec = 0.0, verb = 0.0;
  bool ok = true;
  for (std::int64_t q : {3, 5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto table = radial_eigenbasis(build_graph(ctx, r_s));
      const auto match = match_formulas_to_oracle(ctx, table);
      for (double t : standard_time_grid()) {
        const auto e = heat_kernel_spectral(table, t);
        for (auto r : table.radii)
          rec = std::max(rec, std::abs(finite_theta(ctx, table, match, r, t, ThetaMode::Reconciled).real() -
                                       e.by_radius.at(r)));
      }
    }
  }
  ok = ok && rec <= 1e-12;

  for (std::int64_t q : {5, 7}) {
    const auto ctx = FieldCtx::create(q);
    for (auto r_s : regular_radii(ctx)) {
      const auto rep = theta_consistency_report(ctx, r_s, standard_time_grid());
      ok = ok && rep.phase_two_valued;
      for (auto r : regular_radii(ctx)) {
        if (r == 1) continue;
        bool present = false;
        for (const auto& row : rep.rows)
          present = present || (row.r == r && row.verbatim && std::isfinite(std::abs(*row.verbatim)));
        ok = ok && present;
      }
      verb = std::max(verb, rep.max_verbatim_deviation);
    }
  }

  const auto th = classical_theta(0.0, 1.0, 10);
  const double theta_err = std::abs(th.value - Complex(1.0864348112133080, 0.0));
  const double z = 0.2, t = 1.0, h = 1e-4;
  auto f = [](double zz, double tt) { return classical_theta(zz, tt, 12).value.real(); };
  const double dt = (f(z, t + h) - f(z, t - h)) / (2 * h);
  const double dzz = (f(z + h, t) - 2 * f(z, t) + f(z - h, t)) / (h * h);
  const double rel = std::abs(dt - dzz / (4 * std::numbers::pi)) / std::abs(dt);
  ok = ok && theta_err <= 1e-12 && rel <= 1e-6;
  return {ok, fmt("reconciled %.3g", rec) + fmt(", verbatim max deviation %.3g (finding)", verb) +
                  fmt(", theta(0,i) error %.3g", theta_err) + fmt(", heat identity rel %.3g", rel)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"q=3 closed-form heat kernel", closed_form_q3},
      {"spectral kernel equals matrix-exponential oracle", oracle_equivalence},
      {"initial condition at t=1e-6", initial_condition},
      {"mass conservation and positivity", mass_and_positivity},
      {"spherical table invariants", spherical_invariants_all},
      {"closed-form spherical functions match oracle rows", formula_reconciliation},
      {"method of images on GL(2,F_3)", method_of_images},
      {"Ramanujan bound", ramanujan},
      {"theta audit", theta_audit},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s [%zu] %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
