#pragma once

#include <complex>
#include <cstdint>

#include "fuhp/field.hpp"

namespace fuhp {

using Complex = std::complex<double>;

/// exp(2*pi*i * num/den), reduced mod den before evaluation.
Complex root_of_unity(std::int64_t num, std::int64_t den);

/// beta_j(g^m) = exp(2 pi i j m / (q-1)).
struct MultChar {
  std::int64_t j = 0;
};

/// nu_j(zeta^m) = exp(2 pi i j m / (q^2-1)). Restricted to U it depends on
/// j mod (q+1) only.
struct NonDecompChar {
  std::int64_t j = 0;
};

/// Throws DomainError for a == 0.
Complex beta(const FieldCtx& ctx, MultChar chi, Residue a);

/// nu on all of F_q(sqrt(delta))^x. Throws DomainError for z == 0.
Complex nu_ext(const FieldCtx& ctx, NonDecompChar chi, ExtElement z);

/// nu on U. Throws DomainError unless N(u) == 1.
Complex nu(const FieldCtx& ctx, NonDecompChar chi, ExtElement u);

/// i with u = (zeta^(q-1))^i, 0 <= i <= q. Throws DomainError unless N(u) == 1.
std::int64_t unit_circle_index(const FieldCtx& ctx, ExtElement u);

/// Sign character of U: +1 on squares of U, -1 otherwise.
int nu0(const FieldCtx& ctx, ExtElement u);

/// True when nu^2 is trivial on U, i.e. nu == nu^{-1} there.
bool is_self_dual_on_unit_circle(const FieldCtx& ctx, NonDecompChar chi);

struct OrthogonalityReport {
  double base_field_residual = 0.0;
  double unit_circle_residual = 0.0;
  double magnitude_residual = 0.0;
  double max_residual = 0.0;
  bool passed = false;
};

/// Checks sum_a beta_j(a) conj(beta_k(a)) = (q-1)[j=k] and the same relation
/// for the q+1 characters of U, plus |chi| = 1, against tolerance 1e-12.
OrthogonalityReport character_orthogonality_check(const FieldCtx& ctx);

}  // namespace fuhp
