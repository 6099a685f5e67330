#pragma once

// Morita's p-adic gamma function on Z_p.
//
//   Gamma_p(n) = (-1)^n prod_{1 <= k < n, p does not divide k} k
//
// gamma_int is the literal product. gamma_p evaluates at the integer
// approximant n in [1, p^{K+g}] of z and reports K digits; its unit product
// runs through the progression engine (blocked by default, direct on request).

#include <padic/analytic.hpp>
#include <padic/core.hpp>
#include <padic/progression.hpp>

#include <cstdint>

namespace padic {

/// Gamma_p(n) modulo p^{M+g} by one multiplication per factor.
inline PadicNumber gamma_int(std::uint64_t n, const PrimeContext& ctx) {
  const unsigned W = ctx.working();
  const Integer mod = pow_int(ctx.p, W);
  Integer acc = with_ring(mod, [&](auto ring) -> Integer {
    auto a = ring.one();
    unsigned r = 1;
    for (std::uint64_t k = 1; k < n; ++k, ++r) {
      if (r == ctx.p) {
        r = 0;
        continue;
      }
      a = ring.mul(a, ring.from_i64(static_cast<std::int64_t>(k)));
    }
    return ring.to_integer(a);
  });
  if (n % 2 == 1) acc = -acc;
  return PadicNumber::from_unit(ctx.p, 0, acc, W);
}

struct GammaValue {
  PadicNumber value;
  Rational input;
  Integer approximant;  // n in [1, p^{K+g}], n = input mod p^{K+g}
  unsigned K;
};

/// Gamma_p(n) for an integer n >= 0 with unit product mod p^W.
inline PadicNumber gamma_at_integer(const Integer& n, unsigned p, unsigned W,
                                    ProductStrategy strategy = ProductStrategy::blocked) {
  require(n >= 0, "gamma_at_integer: negative argument");
  if (n <= 1) return PadicNumber::from_unit(p, 0, n == 0 ? 1 : -1, W);
  Integer u = unit_progression_product(Integer(1), n - 1, p, W, strategy);
  if (mpz_odd_p(n.get_mpz_t())) u = -u;
  return PadicNumber::from_unit(p, 0, u, W);
}

/// Gamma_p(z) for a p-integral rational z, correct to K digits.
inline GammaValue gamma_p(const Rational& z, unsigned p, unsigned K, unsigned guard = 5,
                          ProductStrategy strategy = ProductStrategy::blocked) {
  require(p >= 3 && is_prime(p), "gamma_p: p must be an odd prime");
  require(K >= 1, "gamma_p: precision must be at least 1");
  require(mpz_divisible_ui_p(z.get_den().get_mpz_t(), p) == 0, "gamma_p: input is not a p-adic integer");
  const unsigned W = K + guard;
  const Integer mod = pow_int(p, W);
  Integer n = rational_residue(z, mod);
  if (n == 0) n = mod;
  PadicNumber g = gamma_at_integer(n, p, W, strategy);
  require(g.is_unit(), "gamma_p: value is not a unit");
  return {g.with_precision(K), z, n, K};
}

/// Gamma_p at a residue-presented p-adic integer (absolute precision >= K + guard is used).
inline GammaValue gamma_p(const PadicNumber& z, unsigned K, unsigned guard = 5,
                          ProductStrategy strategy = ProductStrategy::blocked) {
  require(z.is_integral(), "gamma_p: input is not a p-adic integer");
  const unsigned W = K + guard;
  require(z.absolute_precision() >= static_cast<long>(W), "gamma_p: input known to fewer than K + guard digits");
  Integer r = z.residue(W);
  return gamma_p(Rational(r), z.prime(), K, guard, strategy);
}

/// Gamma_p(z + 1) / Gamma_p(z): -z for units, -1 for z in pZ_p.
inline PadicNumber ratio_check(const Rational& z, unsigned p, unsigned K, unsigned guard = 5) {
  GammaValue a = gamma_p(z + 1, p, K, guard);
  GammaValue b = gamma_p(z, p, K, guard);
  return a.value / b.value;
}

/// The value the defining relation predicts for ratio_check.
inline PadicNumber ratio_expected(const Rational& z, unsigned p, unsigned K) {
  if (z != 0 && valuation(z, p) == 0) return -from_rational(z, p, K);
  return -one(p, K);
}

/// flat( prod_k Gamma_p(z + k/d) / (d^{1 - dz + (dz)_1} Gamma_p(dz)) ).
/// The identity FlatValue is the multiplication formula.
inline FlatValue mult_check(unsigned d, const Rational& z, unsigned p, unsigned K, unsigned guard = 5) {
  require(d >= 1, "mult_check: d must be positive");
  require(d % p != 0, "mult_check: p divides d");
  const unsigned W = K + guard;
  PadicNumber lhs = one(p, W);
  for (unsigned k = 0; k < d; ++k) {
    Rational zk = z + Rational(k, d);
    zk.canonicalize();
    lhs = lhs * gamma_p(zk, p, W, 0).value;
  }
  Rational dz = Rational(d) * z;
  dz.canonicalize();
  Rational exponent = Rational(1) - dz + digits(dz, p).z1;
  exponent.canonicalize();
  PadicNumber dpow = pow_star(from_rational(Integer(d), Integer(1), p, W), exponent);
  PadicNumber rhs = dpow * gamma_p(dz, p, W, 0).value;
  FlatValue f = flat(lhs / rhs);
  return {f.v, f.u.with_precision(K)};
}

}  // namespace padic
