#pragma once

// Integer helpers and the modular-ring kernels shared by every hot loop.
//
// Values that live in the public API are GMP integers (mpz_class) and
// rationals (mpq_class). The inner products (gamma products, binomial
// products, character sums) run over a ring policy chosen at runtime:
// Mod64Ring when the modulus fits in 63 bits, MpzRing otherwise. Both
// policies expose the same interface so kernels are written once.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace padic {

using Integer = mpz_class;
using Rational = mpq_class;

/// A violated precondition (bad prime, non-unit input, domain error).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative computation failed to converge within its budget.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Non-negative remainder.
inline std::int64_t mod64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// a^{-1} mod m for gcd(a, m) = 1.
inline std::int64_t inverse_mod64(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod64(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  require(g == 1, "inverse_mod64: argument is not invertible");
  return mod64(x, m);
}

inline Integer pow_int(unsigned long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

/// Exponent of p in n; n must be nonzero.
inline long valuation(const Integer& n, unsigned long p) {
  require(n != 0, "valuation of zero");
  Integer t = n;
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline long valuation(std::int64_t n, std::int64_t p) {
  require(n != 0, "valuation of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& q, unsigned long p) {
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

/// n with every factor of p removed.
inline Integer strip_p(const Integer& n, unsigned long p) {
  Integer t = n;
  while (t != 0 && mpz_divisible_ui_p(t.get_mpz_t(), p))
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
  return t;
}

/// Legendre: ord_p(n!) = sum_{i>=1} floor(n / p^i).
inline long factorial_valuation(std::uint64_t n, std::uint64_t p) {
  long v = 0;
  while (n > 0) {
    n /= p;
    v += static_cast<long>(n);
  }
  return v;
}

/// Non-negative residue of a modulo m.
inline Integer reduce(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  require(mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0,
          "inverse_mod: argument is not invertible");
  return r;
}

inline Integer pow_mod(const Integer& a, const Integer& e, const Integer& m) {
  Integer r;
  if (e < 0) {
    Integer inv = inverse_mod(a, m);
    Integer ne = -e;
    mpz_powm(r.get_mpz_t(), inv.get_mpz_t(), ne.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

/// Residue of a p-integral rational modulo m (p does not divide the denominator).
inline Integer rational_residue(const Rational& q, const Integer& m) {
  Integer num = q.get_num(), den = q.get_den();
  return reduce(num * inverse_mod(den, m), m);
}

inline bool fits_u64(const Integer& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer& n) {
  require(fits_u64(n), "integer does not fit in 64 bits");
  std::uint64_t lo = mpz_getlimbn(n.get_mpz_t(), 0);
  return n == 0 ? 0 : lo;
}

inline Integer from_u64(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

/// Z / m with m < 2^63; products go through 128-bit intermediates.
struct Mod64Ring {
  using value_type = std::uint64_t;
  std::uint64_t m;

  explicit Mod64Ring(std::uint64_t modulus) : m(modulus) {}

  value_type zero() const { return 0; }
  value_type one() const { return m == 1 ? 0 : 1; }
  value_type from(const Integer& a) const { return to_u64(reduce(a, from_u64(m))); }
  value_type from_i64(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(m);
    return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
  }
  Integer to_integer(value_type a) const { return from_u64(a); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % m);
  }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= m ? s - m : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : m - a; }
  bool is_zero(value_type a) const { return a == 0; }
};

/// Z / m for arbitrary m.
struct MpzRing {
  using value_type = Integer;
  Integer m;

  explicit MpzRing(Integer modulus) : m(std::move(modulus)) {}

  value_type zero() const { return 0; }
  value_type one() const { return m == 1 ? 0 : 1; }
  value_type from(const Integer& a) const { return reduce(a, m); }
  value_type from_i64(std::int64_t a) const { return reduce(Integer(static_cast<long>(a)), m); }
  Integer to_integer(const value_type& a) const { return a; }
  value_type mul(const value_type& a, const value_type& b) const {
    Integer r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  value_type add(const value_type& a, const value_type& b) const {
    Integer s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    Integer s = a - b;
    if (s < 0) s += m;
    return s;
  }
  value_type neg(const value_type& a) const { return a == 0 ? Integer(0) : Integer(m - a); }
  bool is_zero(const value_type& a) const { return a == 0; }
};

/// Runs f with the fastest ring able to represent Z / modulus.
template <class F>
decltype(auto) with_ring(const Integer& modulus, F&& f) {
  if (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 62) return f(Mod64Ring(to_u64(modulus)));
  return f(MpzRing(modulus));
}

template <class Ring>
typename Ring::value_type ring_pow(const Ring& R, typename Ring::value_type a, std::uint64_t e) {
  auto r = R.one();
  while (e > 0) {
    if (e & 1) r = R.mul(r, a);
    a = R.mul(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace padic
