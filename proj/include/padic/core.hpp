#pragma once

// p-adic numbers at tracked finite precision.
//
// A nonzero value is p^v * u with u a unit known modulo p^K; K is the
// relative precision (digits of u) and v + K the absolute precision.
// Zero is a distinguished value carrying only an absolute precision:
// "0 + O(p^A)". Every operation propagates precision conservatively:
//
//   multiply / divide : K = min(K1, K2)
//   add / subtract    : absolute precision min(A1, A2); relative
//                       precision shrinks by any cancellation
//   integer power     : K unchanged
//
// Values are immutable; all functions are pure.

#include <padic/arith.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace padic {

/// Odd prime p, working precision M and guard digits g.
struct PrimeContext {
  unsigned p;
  unsigned M;
  unsigned g;

  PrimeContext(unsigned prime, unsigned precision, unsigned guard = 5) : p(prime), M(precision), g(guard) {
    require(p >= 3 && is_prime(p), "p must be an odd prime, got " + std::to_string(p));
    require(M >= 1, "precision must be at least 1 digit");
  }

  unsigned working() const { return M + g; }
};

class PadicNumber {
 public:
  /// 0 + O(p^abs_precision).
  static PadicNumber zero(unsigned p, long abs_precision) {
    PadicNumber z;
    z.p_ = p;
    z.zero_ = true;
    z.v_ = abs_precision;
    z.K_ = 0;
    z.u_ = 0;
    return z;
  }

  /// p^v * unit, the unit reduced modulo p^K. The unit must be prime to p.
  static PadicNumber from_unit(unsigned p, long v, const Integer& unit, unsigned K) {
    require(K >= 1, "relative precision must be at least 1");
    PadicNumber x;
    x.p_ = p;
    x.zero_ = false;
    x.v_ = v;
    x.K_ = K;
    x.u_ = reduce(unit, pow_int(p, K));
    require(!mpz_divisible_ui_p(x.u_.get_mpz_t(), p), "unit part divisible by p");
    return x;
  }

  /// The integer n known to absolute precision abs_precision.
  static PadicNumber from_integer(unsigned p, const Integer& n, long abs_precision) {
    if (n == 0) return zero(p, abs_precision);
    long v = padic::valuation(n, p);
    if (v >= abs_precision) return zero(p, abs_precision);
    return from_unit(p, v, strip_p(n, p), static_cast<unsigned>(abs_precision - v));
  }

  /// A residue r modulo p^abs_precision, interpreted as an element of Z_p.
  static PadicNumber from_residue(unsigned p, const Integer& r, long abs_precision) {
    return from_integer(p, reduce(r, pow_int(p, static_cast<unsigned long>(std::max(0L, abs_precision)))),
                        abs_precision);
  }

  unsigned prime() const { return p_; }
  bool is_zero() const { return zero_; }
  /// ord_p; for zero this is the absolute precision.
  long valuation() const { return v_; }
  const Integer& unit() const { return u_; }
  /// Relative precision K (0 for zero).
  unsigned precision() const { return K_; }
  long absolute_precision() const { return zero_ ? v_ : v_ + static_cast<long>(K_); }
  bool is_unit() const { return !zero_ && v_ == 0; }
  bool is_integral() const { return zero_ || v_ >= 0; }

  /// Same value with relative precision lowered to k (no-op if already below).
  PadicNumber with_precision(unsigned k) const {
    if (zero_ || k >= K_) return *this;
    require(k >= 1, "relative precision must be at least 1");
    return from_unit(p_, v_, u_, k);
  }

  /// Same value with absolute precision lowered to a.
  PadicNumber with_absolute_precision(long a) const {
    if (zero_) return zero(p_, std::min(v_, a));
    if (a <= v_) return zero(p_, a);
    if (a >= absolute_precision()) return *this;
    return from_unit(p_, v_, u_, static_cast<unsigned>(a - v_));
  }

  /// Residue modulo p^k of an integral value; requires absolute precision >= k.
  Integer residue(unsigned k) const {
    require(is_integral(), "residue of a non-integral p-adic number");
    require(absolute_precision() >= static_cast<long>(k), "residue requested beyond known precision");
    Integer mod = pow_int(p_, k);
    if (zero_) return 0;
    return reduce(pow_int(p_, static_cast<unsigned long>(v_)) * u_, mod);
  }

  /// Little-endian base-p digits of the unit part (exactly K entries).
  std::vector<unsigned> unit_digits() const {
    std::vector<unsigned> d;
    Integer t = u_;
    for (unsigned i = 0; i < K_; ++i) {
      d.push_back(static_cast<unsigned>(mpz_fdiv_ui(t.get_mpz_t(), p_)));
      mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), p_);
    }
    return d;
  }

  PadicNumber operator-() const {
    if (zero_) return *this;
    return from_unit(p_, v_, -u_, K_);
  }

  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    check_same_prime(a, b);
    // 0 * x: the known zero's absolute precision shifts by the other valuation.
    if (a.zero_ || b.zero_) return zero(a.p_, a.v_ + b.v_);
    unsigned K = std::min(a.K_, b.K_);
    return from_unit(a.p_, a.v_ + b.v_, a.u_ * b.u_, K);
  }

  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    check_same_prime(a, b);
    require(!b.zero_, "division by zero p-adic number");
    if (a.zero_) return zero(a.p_, a.v_ - b.v_);
    unsigned K = std::min(a.K_, b.K_);
    Integer mod = pow_int(a.p_, K);
    return from_unit(a.p_, a.v_ - b.v_, a.u_ * inverse_mod(b.u_, mod), K);
  }

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    check_same_prime(a, b);
    long abs = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.zero_) return b.with_absolute_precision(abs);
    if (b.zero_) return a.with_absolute_precision(abs);
    long base = std::min(a.v_, b.v_);
    if (abs <= base) return zero(a.p_, abs);
    Integer mod = pow_int(a.p_, static_cast<unsigned long>(abs - base));
    Integer s = a.u_ * pow_int(a.p_, static_cast<unsigned long>(a.v_ - base)) +
                b.u_ * pow_int(a.p_, static_cast<unsigned long>(b.v_ - base));
    s = reduce(s, mod);
    if (s == 0) return zero(a.p_, abs);
    long w = padic::valuation(s, a.p_);
    return from_unit(a.p_, base + w, strip_p(s, a.p_), static_cast<unsigned>(abs - base - w));
  }

  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

  /// Integer power; negative exponents invert.
  PadicNumber pow(const Integer& e) const {
    if (e == 0) return from_unit(p_, 0, 1, zero_ ? 1u : K_);
    if (zero_) {
      require(e > 0, "negative power of zero");
      return zero(p_, v_);  // conservative
    }
    Integer mod = pow_int(p_, K_);
    Integer v = Integer(static_cast<long>(v_)) * e;
    require(v.fits_slong_p(), "valuation overflow in pow");
    return from_unit(p_, v.get_si(), pow_mod(u_, e, mod), K_);
  }
  PadicNumber pow(long e) const { return pow(Integer(e)); }

  /// v_p(a - b) >= abs_precision is certain from the known digits.
  bool congruent(const PadicNumber& other, long abs_precision) const {
    return (*this - other).v_ >= abs_precision;
  }

  /// Agreement in relative digits: same valuation and units equal mod p^k.
  bool agrees_relative(const PadicNumber& other, unsigned k) const {
    if (zero_ || other.zero_) return zero_ && other.zero_;
    if (v_ != other.v_) return false;
    require(k <= K_ && k <= other.K_, "agreement requested beyond known precision");
    Integer mod = pow_int(p_, k);
    return reduce(u_ - other.u_, mod) == 0;
  }

  /// Structural equality: same prime, valuation, precision and unit residue.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.zero_ == b.zero_ && a.v_ == b.v_ && a.K_ == b.K_ && a.u_ == b.u_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PadicNumber& x) {
    if (x.zero_) return os << "O(" << x.p_ << "^" << x.v_ << ")";
    os << x.p_ << "^" << x.v_ << "*" << x.u_ << " + O(" << x.p_ << "^" << x.absolute_precision() << ")";
    return os;
  }

 private:
  PadicNumber() = default;

  static void check_same_prime(const PadicNumber& a, const PadicNumber& b) {
    require(a.p_ == b.p_, "mixed primes in p-adic arithmetic");
  }

  unsigned p_ = 3;
  bool zero_ = true;
  long v_ = 0;
  Integer u_ = 0;
  unsigned K_ = 0;
};

/// One with relative precision K.
inline PadicNumber one(unsigned p, unsigned K) { return PadicNumber::from_unit(p, 0, 1, K); }

/// The p-adic value of a/b, unit part correct modulo p^{working precision}.
inline PadicNumber from_rational(const Integer& a, const Integer& b, unsigned p, unsigned K) {
  require(b != 0, "from_rational: zero denominator");
  if (a == 0) return PadicNumber::zero(p, K);
  long v = valuation(a, p) - valuation(b, p);
  Integer mod = pow_int(p, K);
  Integer u = strip_p(a, p) * inverse_mod(strip_p(b, p), mod);
  return PadicNumber::from_unit(p, v, u, K);
}

inline PadicNumber from_rational(const Integer& a, const Integer& b, const PrimeContext& ctx) {
  return from_rational(a, b, ctx.p, ctx.working());
}

inline PadicNumber from_rational(const Rational& q, unsigned p, unsigned K) {
  return from_rational(Integer(q.get_num()), Integer(q.get_den()), p, K);
}

inline PadicNumber from_rational(const Rational& q, const PrimeContext& ctx) {
  return from_rational(q, ctx.p, ctx.working());
}

/// z = z0 + p*z1 with z0 in {1, ..., p}.
struct Digits {
  unsigned z0;
  PadicNumber z1;
};

struct RationalDigits {
  unsigned z0;
  Rational z1;
};

/// Exact digit split of a p-integral rational.
inline RationalDigits digits(const Rational& z, unsigned p) {
  require(mpz_divisible_ui_p(z.get_den().get_mpz_t(), p) == 0, "digits: input is not a p-adic integer");
  Integer r = rational_residue(z, Integer(p));
  unsigned z0 = r == 0 ? p : static_cast<unsigned>(r.get_ui());
  Rational z1 = (z - Rational(z0)) / Rational(p);
  z1.canonicalize();
  return {z0, z1};
}

/// Digit split at tracked precision; z1 loses one digit of absolute precision.
inline Digits digits(const PadicNumber& z) {
  require(z.is_integral(), "digits: negative valuation");
  unsigned p = z.prime();
  long abs = z.absolute_precision();
  require(abs >= 1, "digits: input has no known digits");
  Integer r = z.residue(1);
  unsigned z0 = r == 0 ? p : static_cast<unsigned>(r.get_ui());
  PadicNumber shifted = z - PadicNumber::from_integer(p, Integer(z0), abs);
  PadicNumber z1 = shifted.is_zero()
                       ? PadicNumber::zero(p, shifted.valuation() - 1)
                       : PadicNumber::from_unit(p, shifted.valuation() - 1, shifted.unit(), shifted.precision());
  return {z0, z1};
}

/// The (p-1)-st root of unity congruent to the unit z modulo p, at z's precision.
/// Iterates w -> w^p from w = u; each step fixes one more digit.
inline PadicNumber teichmuller(const PadicNumber& z) {
  require(z.is_unit(), "teichmuller: input is not a unit");
  unsigned p = z.prime();
  Integer mod = pow_int(p, z.precision());
  Integer pp = p;
  Integer w = z.unit();
  for (unsigned i = 0; i <= z.precision(); ++i) {
    Integer next = pow_mod(w, pp, mod);
    if (next == w) break;
    w = next;
  }
  return PadicNumber::from_unit(p, 0, w, z.precision());
}

/// z = teich * p^v * star with teich in mu_{p-1}, star = 1 mod p.
struct CanonicalDecomposition {
  PadicNumber teich;
  long v;
  PadicNumber star;
};

inline CanonicalDecomposition canonical_decomposition(const PadicNumber& z) {
  require(!z.is_zero(), "canonical_decomposition of zero");
  PadicNumber u = PadicNumber::from_unit(z.prime(), 0, z.unit(), z.precision());
  PadicNumber t = teichmuller(u);
  return {t, z.valuation(), u / t};
}

}  // namespace padic
