#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fuhp/characters.hpp"
#include "fuhp/heat.hpp"
#include "fuhp/spherical.hpp"

namespace fuhp {

/// Index sets of the finite theta sum. Indices live in [1, q^2-1], the
/// exponents of zeta (index q^2-1 is zeta^0 = 1).
struct ThetaIndexSets {
  std::int64_t index_group_order = 0;     // q^2 - 1
  std::vector<std::int64_t> unit_indices; // U: N(zeta^m) = 1
  std::vector<Residue> v_r;               // y in F_q^x with x^2 = r y + delta (y-1)^2 solvable
  std::vector<std::int64_t> o_r;          // Tr(zeta^m) - (r+1)/(r-1) a nonzero square

  bool in_o(std::int64_t m) const;
  bool in_v(std::int64_t m) const;
  /// chi_N is the indicator of the whole index group.
  bool in_n(std::int64_t m) const { return m >= 1 && m <= index_group_order; }
};

/// Throws SingularRadius at r = 1.
ThetaIndexSets index_sets(const FieldCtx& ctx, Residue r);

enum class ThetaMode { Verbatim, Reconciled };

/// Exponent coefficient alpha_r(l) and phase beta_r(l, m) (multiplier of
/// 2 pi i) of one verbatim summand.
struct ThetaTerm {
  Complex alpha;
  double beta = 0.0;
};

/// Verbatim summand for (l, m), or nullopt when neither case of beta_r covers
/// the pair.
std::optional<ThetaTerm> verbatim_term(const FieldCtx& ctx, const ThetaIndexSets& sets, std::int64_t l,
                                       std::int64_t m);

/**
 * Finite theta sum at radius r and time t.
 *
 * Verbatim evaluates the double sum over (l, m) term by term; its value
 * is complex in general. Reconciled regroups sum_i d_i exp(-lambda_i t)
 * omega_i(r) as a sum over characters and group elements, with exponents and
 * dimensions from the oracle row matched to each character; it is real and
 * equals the heat kernel. Throws SingularRadius for r = 1 in verbatim mode,
 * DomainError for t < 0.
 */
Complex finite_theta(const FieldCtx& ctx, const SphericalTable& table, Residue r, double t, ThetaMode mode);
Complex finite_theta(const FieldCtx& ctx, const SphericalTable& table, const MatchReport& match, Residue r,
                     double t, ThetaMode mode);

/// True when every verbatim summand carries a phase factor
/// exp(pi i (chi_O + chi_N)) equal to +1 or -1 and chi_N == 1 on the index group.
bool verbatim_phase_is_two_valued(const FieldCtx& ctx, Residue r);

struct ClassicalTheta {
  Complex value;
  double truncation_bound = 0.0;
};

/// sum_{|n| <= n_max} exp(-pi n^2 t + 2 pi i n z), with the tail bound
/// 2 exp(-pi t n_max^2) / (1 - exp(-pi t)). Throws DomainError for t <= 0 or n_max < 1.
ClassicalTheta classical_theta(Complex z, double t, int n_max);

struct ThetaReportRow {
  Residue r = 0;
  double t = 0.0;
  double oracle = 0.0;
  double reconciled = 0.0;
  std::optional<Complex> verbatim;  // absent at r = 1
  std::optional<double> verbatim_deviation;
};

struct ThetaReport {
  HeatParams params;
  std::vector<ThetaReportRow> rows;
  double max_reconciled_error = 0.0;
  double max_verbatim_deviation = 0.0;
  bool phase_two_valued = true;
  /// Reconciled column within 1e-9 of the oracle everywhere.
  bool passed = false;
};

/// Every radius and t of the grid: oracle, reconciled and verbatim values.
ThetaReport theta_consistency_report(const FieldCtx& ctx, Residue r_s, std::span<const double> t_grid);

}  // namespace fuhp
