#include "fuhp/field.hpp"

#include <string>

#include "fuhp/errors.hpp"

namespace fuhp {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

void require_odd_prime(std::int64_t q) {
  if (q < 3 || q % 2 == 0 || !is_prime(q))
    throw InvalidParameter("q must be an odd prime (got " + std::to_string(q) + ")");
}

std::vector<bool> square_table(std::int64_t q) {
  std::vector<bool> sq(static_cast<std::size_t>(q), false);
  for (std::int64_t a = 1; a < q; ++a) sq[static_cast<std::size_t>(a * a % q)] = true;
  return sq;
}

}  // namespace

Residue find_nonsquare(std::int64_t q) {
  require_odd_prime(q);
  const auto sq = square_table(q);
  for (Residue a = 1; a < q; ++a)
    if (!sq[static_cast<std::size_t>(a)]) return a;
  throw InternalError("no non-square found mod " + std::to_string(q));
}

FieldCtx FieldCtx::create(std::int64_t q, std::optional<Residue> delta) {
  require_odd_prime(q);
  FieldCtx ctx;
  ctx.q_ = q;
  if (delta) {
    const Residue d = ctx.reduce(*delta);
    if (d == 0 || square_table(q)[static_cast<std::size_t>(d)])
      throw InvalidParameter("delta = " + std::to_string(*delta) + " is a square mod " +
                             std::to_string(q) + "; a non-square is required");
    ctx.delta_ = d;
  } else {
    ctx.delta_ = find_nonsquare(q);
  }

  ctx.g_ = find_generator(ctx, GeneratorKind::BaseField).a;
  ctx.zeta_ = find_generator(ctx, GeneratorKind::ExtensionField);

  const auto n1 = static_cast<std::size_t>(q - 1);
  ctx.pow_g_.resize(n1);
  ctx.dlog_q_.assign(static_cast<std::size_t>(q), -1);
  Residue x = 1;
  for (std::size_t m = 0; m < n1; ++m) {
    ctx.pow_g_[m] = x;
    ctx.dlog_q_[static_cast<std::size_t>(x)] = static_cast<std::int64_t>(m);
    x = ctx.mul(x, ctx.g_);
  }

  const auto n2 = static_cast<std::size_t>(q * q - 1);
  ctx.pow_zeta_.resize(n2);
  ctx.dlog_q2_.assign(static_cast<std::size_t>(q * q), -1);
  ExtElement z{1, 0};
  for (std::size_t m = 0; m < n2; ++m) {
    ctx.pow_zeta_[m] = z;
    ctx.dlog_q2_[ctx.ext_key(z)] = static_cast<std::int64_t>(m);
    z = ctx.ext_mul(z, ctx.zeta_);
  }
  return ctx;
}

Residue FieldCtx::pow(Residue x, std::int64_t e) const {
  Residue base = reduce(x);
  Residue acc = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc;
}

Residue FieldCtx::inv(Residue x) const {
  x = reduce(x);
  if (x == 0) throw DomainError("zero has no inverse in F_q");
  return pow(x, q_ - 2);
}

bool FieldCtx::is_square(Residue x) const {
  x = reduce(x);
  return x == 0 || pow(x, (q_ - 1) / 2) == 1;
}

int FieldCtx::quadratic_character(Residue x) const {
  x = reduce(x);
  if (x == 0) return 0;
  return pow(x, (q_ - 1) / 2) == 1 ? 1 : -1;
}

ExtElement FieldCtx::ext_mul(ExtElement z, ExtElement w) const {
  return {reduce(z.a * w.a + mul(delta_, z.b) * w.b), reduce(z.a * w.b + z.b * w.a)};
}

ExtElement FieldCtx::ext_pow(ExtElement z, std::int64_t e) const {
  ExtElement acc{1, 0};
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = ext_mul(acc, z);
    z = ext_mul(z, z);
  }
  return acc;
}

Residue FieldCtx::ext_norm(ExtElement z) const {
  return sub(mul(z.a, z.a), mul(delta_, mul(z.b, z.b)));
}

ExtElement FieldCtx::ext_inv(ExtElement z) const {
  const Residue n = ext_norm(z);
  if (n == 0) throw DomainError("zero has no inverse in F_q(sqrt(delta))");
  const Residue ni = inv(n);
  const ExtElement c = ext_conj(z);
  return {mul(c.a, ni), mul(c.b, ni)};
}

std::int64_t FieldCtx::dlog(Residue x) const {
  x = reduce(x);
  if (x == 0) throw DomainError("discrete log of zero");
  return dlog_q_[static_cast<std::size_t>(x)];
}

std::int64_t FieldCtx::dlog_ext(ExtElement z) const {
  z = {reduce(z.a), reduce(z.b)};
  if (z.a == 0 && z.b == 0) throw DomainError("discrete log of zero");
  return dlog_q2_[ext_key(z)];
}

Residue FieldCtx::g_pow(std::int64_t m) const {
  const std::int64_t n = q_ - 1;
  return pow_g_[static_cast<std::size_t>(((m % n) + n) % n)];
}

ExtElement FieldCtx::zeta_pow(std::int64_t m) const {
  const std::int64_t n = q_ * q_ - 1;
  return pow_zeta_[static_cast<std::size_t>(((m % n) + n) % n)];
}

std::int64_t FieldCtx::order(Residue x) const {
  x = reduce(x);
  if (x == 0) throw DomainError("order of zero");
  std::int64_t n = q_ - 1;
  for (auto p : prime_factors(q_ - 1))
    while (n % p == 0 && pow(x, n / p) == 1) n /= p;
  return n;
}

std::int64_t FieldCtx::ext_order(ExtElement z) const {
  if (ext_norm(z) == 0) throw DomainError("order of zero");
  std::int64_t n = q_ * q_ - 1;
  for (auto p : prime_factors(q_ * q_ - 1))
    while (n % p == 0 && ext_pow(z, n / p) == ExtElement{1, 0}) n /= p;
  return n;
}

ExtElement find_generator(const FieldCtx& ctx, GeneratorKind which) {
  const std::int64_t q = ctx.q();
  if (which == GeneratorKind::BaseField) {
    for (Residue a = 1; a < q; ++a)
      if (ctx.order(a) == q - 1) return {a, 0};
  } else {
    for (Residue a = 0; a < q; ++a)
      for (Residue b = 0; b < q; ++b) {
        if (a == 0 && b == 0) continue;
        if (ctx.ext_order({a, b}) == q * q - 1) return {a, b};
      }
  }
  throw InternalError("cyclic group without a generator");
}

std::vector<ExtElement> norm_one_subgroup(const FieldCtx& ctx) {
  const ExtElement u = ctx.zeta_pow(ctx.q() - 1);
  std::vector<ExtElement> out;
  out.reserve(static_cast<std::size_t>(ctx.q() + 1));
  ExtElement x{1, 0};
  for (std::int64_t k = 0; k <= ctx.q(); ++k) {
    out.push_back(x);
    x = ctx.ext_mul(x, u);
  }
  return out;
}

}  // namespace fuhp
