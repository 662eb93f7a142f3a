#include "fuhp/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fuhp/errors.hpp"

namespace fuhp {

bool ThetaIndexSets::in_o(std::int64_t m) const { return std::binary_search(o_r.begin(), o_r.end(), m); }
bool ThetaIndexSets::in_v(std::int64_t m) const { return std::binary_search(v_r.begin(), v_r.end(), m); }

ThetaIndexSets index_sets(const FieldCtx& ctx, Residue r) {
  r = ctx.reduce(r);
  if (r == 1) throw SingularRadius("(r+1)/(r-1) has a pole at r = 1");
  ThetaIndexSets s;
  s.index_group_order = ctx.ext_group_order();
  const Residue shift = ctx.div(ctx.add(r, 1), ctx.sub(r, 1));
  for (std::int64_t m = 1; m <= s.index_group_order; ++m) {
    const ExtElement z = ctx.zeta_pow(m);
    if (ctx.ext_norm(z) == 1) s.unit_indices.push_back(m);
    if (ctx.quadratic_character(ctx.sub(ctx.ext_trace(z), shift)) == 1) s.o_r.push_back(m);
  }
  for (const auto& p : sphere(ctx, r)) s.v_r.push_back(p.y);
  std::sort(s.v_r.begin(), s.v_r.end());
  s.v_r.erase(std::unique(s.v_r.begin(), s.v_r.end()), s.v_r.end());
  return s;
}

namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("finite theta needs t >= 0");
}

/// (q+1) times the principal form (1/(q+1)) sum_{m in V(r)} exp(2 pi i l m/(q-1)).
Complex verbatim_principal_eigenvalue(const FieldCtx& ctx, const ThetaIndexSets& s, std::int64_t l) {
  Complex sum = 0.0;
  for (auto m : s.v_r) sum += root_of_unity(l * m, ctx.q() - 1);
  return sum;
}

/// (q+1) times the cuspidal form (1/(q+1)) sum_{m in U} exp(2 pi i ((chi_O + chi_N)/2 + l m/(q^2-1))).
Complex verbatim_cuspidal_eigenvalue(const ThetaIndexSets& s, std::int64_t l) {
  const std::int64_t n = s.index_group_order;
  Complex sum = 0.0;
  for (auto m : s.unit_indices) {
    const int half_turns = static_cast<int>(s.in_o(m)) + static_cast<int>(s.in_n(m));
    sum += (half_turns % 2 == 0 ? 1.0 : -1.0) * root_of_unity(l * m, n);
  }
  return sum;
}

}  // namespace

std::optional<ThetaTerm> verbatim_term(const FieldCtx& ctx, const ThetaIndexSets& sets, std::int64_t l,
                                       std::int64_t m) {
  const std::int64_t q = ctx.q();
  const std::int64_t n = sets.index_group_order;
  const bool l_in_base = l >= 1 && l <= q - 1;
  const bool m_in_v = sets.in_v(m);
  const double sign_part = (static_cast<double>(sets.in_o(m)) + static_cast<double>(sets.in_n(m))) / 2.0;
  if (l_in_base && m_in_v) {
    const Complex alpha = verbatim_principal_eigenvalue(ctx, sets, l) + verbatim_cuspidal_eigenvalue(sets, l);
    const double phase = static_cast<double>((l * m * (q + 2)) % n) / static_cast<double>(n);
    return ThetaTerm{alpha, sign_part + phase};
  }
  if (!l_in_base && !m_in_v) {
    const double phase = static_cast<double>((l * m) % n) / static_cast<double>(n);
    return ThetaTerm{verbatim_cuspidal_eigenvalue(sets, l), sign_part + phase};
  }
  return std::nullopt;
}

bool verbatim_phase_is_two_valued(const FieldCtx& ctx, Residue r) {
  const auto s = index_sets(ctx, r);
  for (std::int64_t m = 1; m <= s.index_group_order; ++m) {
    if (!s.in_n(m)) return false;
    const double half = (static_cast<double>(s.in_o(m)) + 1.0) / 2.0;
    const Complex factor = std::exp(Complex(0.0, 2.0 * std::numbers::pi * half));
    if (std::abs(std::abs(factor.real()) - 1.0) > 1e-12 || std::abs(factor.imag()) > 1e-12) return false;
  }
  return true;
}

namespace {

Complex verbatim_theta(const FieldCtx& ctx, Residue r, double t) {
  const auto sets = index_sets(ctx, r);
  // alpha_r(l) depends on l only; cache it per l.
  Complex sum = 0.0;
  for (std::int64_t l = 1; l <= sets.index_group_order; ++l) {
    std::optional<Complex> decay;
    for (auto m : sets.unit_indices) {
      const auto term = verbatim_term(ctx, sets, l, m);
      if (!term) continue;
      if (!decay) decay = std::exp(-term->alpha * t);
      sum += *decay * std::exp(Complex(0.0, 2.0 * std::numbers::pi * term->beta));
    }
  }
  return sum / static_cast<double>(ctx.q() + 1);
}

double reconciled_theta(const FieldCtx& ctx, const SphericalTable& table, const MatchReport& match, Residue r,
                        double t) {
  const std::int64_t q = ctx.q();
  r = ctx.reduce(r);
  const Residue antipode = antipodal_radius(ctx);

  auto weight_of = [&](SeriesFamily family, std::int64_t cls) {
    const CharacterMatch* m = match.find(family, cls);
    if (!m) throw ReconciliationFailure("no oracle row for character class " + std::to_string(cls));
    const auto& row = table.rows[m->row];
    return row.multiplicity * std::exp(-row.laplace_eigenvalue * t);
  };

  Complex total = 0.0;

  // Principal part: l over Z/(q-1), group elements z in S_r.
  const auto shell = sphere(ctx, r);
  for (std::int64_t l = 0; l < q - 1; ++l) {
    const std::int64_t cls = std::min(l, q - 1 - l);
    const double pair_weight = (2 * l) % (q - 1) == 0 ? 1.0 : 0.5;
    Complex inner = 0.0;
    for (const auto& z : shell) inner += root_of_unity(l * ctx.dlog(z.y), q - 1);
    total += pair_weight * weight_of(SeriesFamily::Principal, cls) * inner / static_cast<double>(shell.size());
  }

  // Cuspidal part: l over characters of U with l != -l, m over U.
  const auto units = norm_one_subgroup(ctx);
  Residue shift = 0;
  if (r != 0 && r != antipode) {
    const Residue rho = disk_parameter(ctx, r);
    shift = ctx.mul(2, ctx.div(ctx.add(1, rho), ctx.sub(1, rho)));
  }
  for (std::int64_t l = 1; l <= q; ++l) {
    if ((2 * l) % (q + 1) == 0) continue;
    const std::int64_t cls = std::min(l, q + 1 - l);
    Complex inner = 0.0;
    if (r == 0) {
      inner = 1.0;
    } else if (r == antipode) {
      inner = -root_of_unity(l * (q + 1) / 2, q + 1);
    } else {
      for (std::size_t i = 0; i < units.size(); ++i) {
        const int e = ctx.quadratic_character(ctx.sub(ctx.ext_trace(units[i]), shift));
        if (e == 0) continue;
        const double sign_half_turns = e == 1 ? 1.0 : 0.5;  // (chi_O + chi_N)/2
        const auto idx = static_cast<std::int64_t>(i);
        const double phase = sign_half_turns + static_cast<double>(idx) / 2.0 +
                             static_cast<double>((l * idx) % (q + 1)) / static_cast<double>(q + 1);
        inner += std::exp(Complex(0.0, 2.0 * std::numbers::pi * phase));
      }
      inner /= static_cast<double>(q + 1);
    }
    total += 0.5 * weight_of(SeriesFamily::Cuspidal, cls) * inner;
  }
  return total.real();
}

}  // namespace

Complex finite_theta(const FieldCtx& ctx, const SphericalTable& table, const MatchReport& match, Residue r,
                     double t, ThetaMode mode) {
  require_time(t);
  if (mode == ThetaMode::Verbatim) return verbatim_theta(ctx, r, t);
  return reconciled_theta(ctx, table, match, r, t);
}

Complex finite_theta(const FieldCtx& ctx, const SphericalTable& table, Residue r, double t, ThetaMode mode) {
  require_time(t);
  if (mode == ThetaMode::Verbatim) return verbatim_theta(ctx, r, t);
  return reconciled_theta(ctx, table, match_formulas_to_oracle(ctx, table), r, t);
}

ClassicalTheta classical_theta(Complex z, double t, int n_max) {
  if (!(t > 0.0)) throw DomainError("classical theta needs t > 0");
  if (n_max < 1) throw DomainError("classical theta needs n_max >= 1");
  const double pi = std::numbers::pi;
  Complex sum = 1.0;
  for (int n = n_max; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    const double decay = std::exp(-pi * nn * nn * t);
    sum += decay * (std::exp(Complex(0.0, 2.0 * pi * nn) * z) + std::exp(Complex(0.0, -2.0 * pi * nn) * z));
  }
  const double bound = 2.0 * std::exp(-pi * t * n_max * n_max) / (1.0 - std::exp(-pi * t));
  return {sum, bound};
}

ThetaReport theta_consistency_report(const FieldCtx& ctx, Residue r_s, std::span<const double> t_grid) {
  const UhpGraph g = build_graph(ctx, r_s);
  const SphericalTable table = radial_eigenbasis(g);
  const MatchReport match = match_formulas_to_oracle(ctx, table);
  const HeatOracle oracle(g);

  ThetaReport rep;
  rep.params = {ctx.q(), ctx.delta(), g.generating_radius()};
  for (auto r : table.radii)
    if (r != 1) rep.phase_two_valued = rep.phase_two_valued && verbatim_phase_is_two_valued(ctx, r);

  for (double t : t_grid) {
    const auto kernel = oracle.kernel(t);
    for (auto r : table.radii) {
      ThetaReportRow row;
      row.r = r;
      row.t = t;
      row.oracle = kernel.by_radius.at(r);
      row.reconciled = finite_theta(ctx, table, match, r, t, ThetaMode::Reconciled).real();
      rep.max_reconciled_error = std::max(rep.max_reconciled_error, std::abs(row.reconciled - row.oracle));
      if (r != 1) {
        row.verbatim = finite_theta(ctx, table, match, r, t, ThetaMode::Verbatim);
        row.verbatim_deviation = std::abs(*row.verbatim - Complex(row.oracle, 0.0));
        rep.max_verbatim_deviation = std::max(rep.max_verbatim_deviation, *row.verbatim_deviation);
      }
      rep.rows.push_back(row);
    }
  }
  rep.passed = rep.max_reconciled_error <= 1e-9;
  return rep;
}

}  // namespace fuhp
