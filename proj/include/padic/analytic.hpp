#pragma once

// Iwasawa logarithm, the exponential on pZ_p, the star/flat projections and
// p-adic binomial coefficients.
//
// Precision: for odd p both log_p on 1 + pZ_p and exp_p on pZ_p are
// isometries, so outputs keep the input's absolute precision. Series are
// truncated at the first index whose term valuation reaches the target
// (n - v_p(n) for log, n*v - v_p(n!) for exp), with every term's valuation
// computed exactly rather than inferred from residues.

#include <padic/core.hpp>
#include <padic/progression.hpp>

#include <ostream>

namespace padic {

/// Number of series terms used by log_p for absolute precision `target`:
/// the largest n with n - v_p(n) < target.
inline long log_series_length(unsigned p, long target) {
  // n - v_p(n) is not monotone, but n - v_p(n) >= n - 63 bounds the scan.
  long last = 1;
  for (long n = 1; n < target + 64; ++n)
    if (n - valuation(static_cast<std::int64_t>(n), p) < target) last = n;
  return last;
}

/// Number of series terms used by exp_p for input valuation v >= 1.
inline long exp_series_length(unsigned p, long v, long target) {
  // v_p(n!) <= (n-1)/(p-1) <= (n-1)/2, so n*v - v_p(n!) > n/2 and n < 2*target suffices.
  long last = 0;
  for (long n = 1; n < 2 * target + 2; ++n)
    if (n * v - factorial_valuation(static_cast<std::uint64_t>(n), p) < target) last = n;
  return last;
}

namespace detail {

/// log(1 + x) for x = p * t known modulo p^target; returns residue mod p^target.
inline Integer log_one_plus(const Integer& x, unsigned p, long target) {
  Integer mod = pow_int(p, static_cast<unsigned long>(target));
  Integer sum = 0;
  Integer xn = 1;
  long terms = log_series_length(p, target);
  for (long n = 1; n <= terms; ++n) {
    xn = reduce(xn * x, mod * pow_int(p, 8));  // headroom for division by p^{v_p(n)}
    long vn = valuation(static_cast<std::int64_t>(n), p);
    Integer num = xn;
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pow_int(p, static_cast<unsigned long>(vn)).get_mpz_t());
    Integer unit_n = Integer(n) / pow_int(p, static_cast<unsigned long>(vn));
    Integer term = reduce(num * inverse_mod(unit_n, mod), mod);
    if (n % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return reduce(sum, mod);
}

}  // namespace detail

/// Iwasawa logarithm: log_p(p) = 0 and roots of unity map to 0.
inline PadicNumber log_p(const PadicNumber& z) {
  require(!z.is_zero(), "log_p of zero");
  unsigned p = z.prime();
  long K = z.precision();
  Integer mod = pow_int(p, static_cast<unsigned long>(K));
  Integer w = pow_mod(z.unit(), Integer(p - 1), mod);
  Integer x = reduce(w - 1, mod);
  if (x == 0) return PadicNumber::zero(p, K);
  Integer L = detail::log_one_plus(x, p, K);
  L = reduce(L * inverse_mod(Integer(p - 1), mod), mod);
  return PadicNumber::from_integer(p, L, K);
}

/// exp_p on its convergence region v_p(z) >= 1.
inline PadicNumber exp_p(const PadicNumber& z) {
  unsigned p = z.prime();
  long target = z.absolute_precision();
  if (z.is_zero()) return PadicNumber::from_unit(p, 0, 1, static_cast<unsigned>(std::max(1L, target)));
  require(z.valuation() >= 1, "exp_p: input outside convergence region (need v_p >= 1)");
  Integer mod = pow_int(p, static_cast<unsigned long>(target));
  long v = z.valuation();
  long terms = exp_series_length(p, v, target);
  Integer sum = 1;
  Integer tn = 1;        // unit^n
  Integer fact_unit = 1;  // unit part of n!
  for (long n = 1; n <= terms; ++n) {
    tn = reduce(tn * z.unit(), mod);
    Integer nn = strip_p(Integer(n), p);
    fact_unit = reduce(fact_unit * nn, mod);
    long e = n * v - factorial_valuation(static_cast<std::uint64_t>(n), p);
    if (e >= target) continue;
    Integer term = tn * inverse_mod(fact_unit, mod) * pow_int(p, static_cast<unsigned long>(e));
    sum = reduce(sum + term, mod);
  }
  return PadicNumber::from_unit(p, 0, sum, static_cast<unsigned>(target));
}

/// z* : the principal-unit part, z / (teichmuller * p^v).
inline PadicNumber star(const PadicNumber& z) { return canonical_decomposition(z).star; }

/// exp_p(log_p z): the defining route for z*, kept as a cross-check of star().
inline PadicNumber star_via_log(const PadicNumber& z) { return exp_p(log_p(z)); }

/// An element of the image of the flat projection: p^v * u, v rational, u = 1 mod p.
struct FlatValue {
  Rational v;
  PadicNumber u;

  static FlatValue identity(unsigned p, unsigned K) { return {Rational(0), one(p, K)}; }

  unsigned prime() const { return u.prime(); }
  unsigned precision() const { return u.precision(); }

  friend FlatValue operator*(const FlatValue& a, const FlatValue& b) {
    Rational v = a.v + b.v;
    v.canonicalize();
    return {v, a.u * b.u};
  }
  friend FlatValue operator/(const FlatValue& a, const FlatValue& b) {
    Rational v = a.v - b.v;
    v.canonicalize();
    return {v, a.u / b.u};
  }
  FlatValue pow(long e) const {
    Rational ve = v * Rational(e);
    ve.canonicalize();
    return {ve, u.pow(e)};
  }
  /// n-th root; exact on this group when p does not divide n.
  FlatValue root(long n) const {
    require(n != 0 && n % static_cast<long>(prime()) != 0, "FlatValue::root requires p to not divide n");
    Rational vn = v / Rational(n);
    vn.canonicalize();
    PadicNumber ln = log_p(u);
    PadicNumber scaled = ln / from_rational(Integer(n), Integer(1), prime(), precision());
    return {vn, exp_p(scaled).with_precision(precision())};
  }

  /// v_p(u - 1), or the known precision when u is 1 to all known digits.
  long identity_depth() const {
    PadicNumber d = u - one(prime(), precision());
    return d.valuation();
  }

  /// Zero exponent and u = 1 mod p^k.
  bool is_identity(long k) const { return v == 0 && identity_depth() >= k; }

  friend bool operator==(const FlatValue& a, const FlatValue& b) { return a.v == b.v && a.u == b.u; }

  friend std::ostream& operator<<(std::ostream& os, const FlatValue& f) {
    return os << "p^(" << f.v.get_str() << ")*" << f.u;
  }
};

/// z^flat = p^{ord_p z} z*.
inline FlatValue flat(const PadicNumber& z) { return {Rational(z.valuation()), star(z)}; }

/// alpha^beta := exp_p(beta * log_p alpha), for a p-adic integer beta.
inline PadicNumber pow_star(const PadicNumber& alpha, const PadicNumber& beta) {
  require(!alpha.is_zero(), "pow_star: zero base");
  require(beta.is_integral(), "pow_star: exponent must be a p-adic integer");
  unsigned K = alpha.precision();
  PadicNumber L = log_p(alpha);
  if (beta.is_zero()) return one(alpha.prime(), K);
  return exp_p(beta * L).with_absolute_precision(K);
}

inline PadicNumber pow_star(const PadicNumber& alpha, const Rational& beta) {
  return pow_star(alpha, from_rational(beta, alpha.prime(), alpha.precision()));
}

/// x(x-1)...(x-k+1)/k! for a p-integral rational x, as a p-adic number
/// with relative precision K. The valuation is exact.
inline PadicNumber binom_padic(const Rational& x, const Integer& k, unsigned p, unsigned K,
                               ProductStrategy strategy = ProductStrategy::blocked) {
  require(k >= 0, "binom_padic: negative k");
  if (k == 0) return one(p, K);
  // prod_{j<k} (x - j) = (-1)^k prod_{j<k} (-x + j)
  Rational negx = -x;
  ValuedUnit num = progression_product(negx, k, p, K, strategy);
  if (num.zero) return PadicNumber::zero(p, K);
  ValuedUnit fact = progression_product(Rational(1), k, p, K, strategy);
  if (fits_u64(k)) require(fact.valuation == factorial_valuation(to_u64(k), p), "binom_padic: Legendre mismatch");
  Integer mod = pow_int(p, K);
  Integer u = num.unit * inverse_mod(fact.unit, mod);
  if (mpz_odd_p(k.get_mpz_t())) u = -u;
  return PadicNumber::from_unit(p, num.valuation - fact.valuation, u, K);
}

}  // namespace padic
