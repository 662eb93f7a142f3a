#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace fuhp {

using Residue = std::int64_t;

/// a + b*sqrt(delta) in F_q(sqrt(delta)).
struct ExtElement {
  Residue a = 0;
  Residue b = 0;

  friend auto operator<=>(const ExtElement&, const ExtElement&) = default;
};

enum class GeneratorKind { BaseField, ExtensionField };

bool is_prime(std::int64_t n);

/// Distinct prime divisors of n > 0, ascending.
std::vector<std::int64_t> prime_factors(std::int64_t n);

/// Smallest positive residue that is not a square mod q. Throws InvalidParameter
/// unless q is an odd prime.
Residue find_nonsquare(std::int64_t q);

/**
 * Arithmetic context for F_q (q an odd prime) and its quadratic extension
 * F_q(sqrt(delta)).
 *
 * Holds the fixed generators g of F_q^x and zeta of F_q(sqrt(delta))^x
 * together with exponent and discrete-log tables for both. Immutable after
 * construction.
 */
class FieldCtx {
 public:
  /// Builds a context; delta defaults to find_nonsquare(q). Throws
  /// InvalidParameter if q is not an odd prime or delta is a square.
  static FieldCtx create(std::int64_t q, std::optional<Residue> delta = std::nullopt);

  std::int64_t q() const { return q_; }
  Residue delta() const { return delta_; }
  Residue g() const { return g_; }
  ExtElement zeta() const { return zeta_; }

  /// q - 1 and q^2 - 1.
  std::int64_t base_group_order() const { return q_ - 1; }
  std::int64_t ext_group_order() const { return q_ * q_ - 1; }

  Residue reduce(std::int64_t v) const {
    v %= q_;
    return v < 0 ? v + q_ : v;
  }
  Residue add(Residue x, Residue y) const { return reduce(x + y); }
  Residue sub(Residue x, Residue y) const { return reduce(x - y); }
  Residue mul(Residue x, Residue y) const { return reduce(x * y); }
  Residue neg(Residue x) const { return reduce(-x); }
  Residue pow(Residue x, std::int64_t e) const;
  /// Throws DomainError on zero.
  Residue inv(Residue x) const;
  Residue div(Residue x, Residue y) const { return mul(x, inv(y)); }
  bool is_square(Residue x) const;
  /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at 0.
  int quadratic_character(Residue x) const;

  ExtElement embed(Residue x) const { return {reduce(x), 0}; }
  ExtElement ext_add(ExtElement z, ExtElement w) const { return {add(z.a, w.a), add(z.b, w.b)}; }
  ExtElement ext_sub(ExtElement z, ExtElement w) const { return {sub(z.a, w.a), sub(z.b, w.b)}; }
  ExtElement ext_mul(ExtElement z, ExtElement w) const;
  ExtElement ext_conj(ExtElement z) const { return {z.a, neg(z.b)}; }
  ExtElement ext_pow(ExtElement z, std::int64_t e) const;
  ExtElement ext_inv(ExtElement z) const;
  Residue ext_norm(ExtElement z) const;
  Residue ext_trace(ExtElement z) const { return add(z.a, z.a); }

  /// m with g^m = x, 0 <= m < q-1. Throws DomainError on zero.
  std::int64_t dlog(Residue x) const;
  /// m with zeta^m = z, 0 <= m < q^2-1. Throws DomainError on zero.
  std::int64_t dlog_ext(ExtElement z) const;
  Residue g_pow(std::int64_t m) const;
  ExtElement zeta_pow(std::int64_t m) const;

  std::int64_t order(Residue x) const;
  std::int64_t ext_order(ExtElement z) const;

 private:
  FieldCtx() = default;

  std::size_t ext_key(ExtElement z) const { return static_cast<std::size_t>(z.a * q_ + z.b); }

  std::int64_t q_ = 0;
  Residue delta_ = 0;
  Residue g_ = 0;
  ExtElement zeta_{};
  std::vector<std::int64_t> dlog_q_;
  std::vector<Residue> pow_g_;
  std::vector<std::int64_t> dlog_q2_;
  std::vector<ExtElement> pow_zeta_;
};

/// Smallest element whose multiplicative order equals the group order; for
/// the extension field the order on (a, b) is lexicographic. Base-field
/// generators are returned embedded as (g, 0).
ExtElement find_generator(const FieldCtx& ctx, GeneratorKind which);

/// Norm-one subgroup U in the cyclic order 1, u, u^2, ... with u = zeta^(q-1).
std::vector<ExtElement> norm_one_subgroup(const FieldCtx& ctx);

}  // namespace fuhp
