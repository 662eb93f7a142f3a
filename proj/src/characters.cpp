#include "fuhp/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fuhp/errors.hpp"

namespace fuhp {

Complex root_of_unity(std::int64_t num, std::int64_t den) {
  const std::int64_t k = ((num % den) + den) % den;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(den));
}

Complex beta(const FieldCtx& ctx, MultChar chi, Residue a) {
  if (ctx.reduce(a) == 0) throw DomainError("multiplicative character evaluated at 0");
  const std::int64_t n = ctx.base_group_order();
  return root_of_unity((chi.j % n) * ctx.dlog(a), n);
}

Complex nu_ext(const FieldCtx& ctx, NonDecompChar chi, ExtElement z) {
  const std::int64_t n = ctx.ext_group_order();
  return root_of_unity((chi.j % n) * ctx.dlog_ext(z), n);
}

std::int64_t unit_circle_index(const FieldCtx& ctx, ExtElement u) {
  if (ctx.ext_norm(u) != 1) throw DomainError("element is not in the norm-one subgroup U");
  return ctx.dlog_ext(u) / (ctx.q() - 1);
}

Complex nu(const FieldCtx& ctx, NonDecompChar chi, ExtElement u) {
  const std::int64_t i = unit_circle_index(ctx, u);
  return root_of_unity((chi.j % (ctx.q() + 1)) * i, ctx.q() + 1);
}

int nu0(const FieldCtx& ctx, ExtElement u) { return unit_circle_index(ctx, u) % 2 == 0 ? 1 : -1; }

bool is_self_dual_on_unit_circle(const FieldCtx& ctx, NonDecompChar chi) {
  const std::int64_t n = ctx.ext_group_order();
  const std::int64_t e = (((ctx.q() - 1) * chi.j) % n + n) % n;
  return e == 0 || e == n / 2;
}

OrthogonalityReport character_orthogonality_check(const FieldCtx& ctx) {
  OrthogonalityReport rep;
  const std::int64_t q = ctx.q();

  std::vector<std::vector<Complex>> base(static_cast<std::size_t>(q - 1));
  for (std::int64_t j = 0; j < q - 1; ++j)
    for (Residue a = 1; a < q; ++a) base[static_cast<std::size_t>(j)].push_back(beta(ctx, {j}, a));

  const auto units = norm_one_subgroup(ctx);
  std::vector<std::vector<Complex>> circle(static_cast<std::size_t>(q + 1));
  for (std::int64_t j = 0; j <= q; ++j)
    for (const auto& u : units) circle[static_cast<std::size_t>(j)].push_back(nu(ctx, {j}, u));

  auto gram_residual = [&rep](const std::vector<std::vector<Complex>>& table) {
    double worst = 0.0;
    const double order = static_cast<double>(table.front().size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (const auto& v : table[j]) rep.magnitude_residual = std::max(rep.magnitude_residual, std::abs(std::abs(v) - 1.0));
      for (std::size_t k = 0; k < table.size(); ++k) {
        Complex s = 0.0;
        for (std::size_t a = 0; a < table[j].size(); ++a) s += table[j][a] * std::conj(table[k][a]);
        worst = std::max(worst, std::abs(s - (j == k ? order : 0.0)));
      }
    }
    return worst;
  };

  rep.base_field_residual = gram_residual(base);
  rep.unit_circle_residual = gram_residual(circle);
  rep.max_residual = std::max({rep.base_field_residual, rep.unit_circle_residual, rep.magnitude_residual});
  rep.passed = rep.max_residual <= 1e-12;
  return rep;
}

}  // namespace fuhp
