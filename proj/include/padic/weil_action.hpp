#pragma once

// The degree-one Weil action on Q/Z, read through a/N <-> zeta_N^a.
// On points prime to p it is z -> <pz>; its inverse is z -> z_1 + 1.
// Points with p in the denominator are split as (prime-to-p part) +
// (p-power part); the inverse acts on the p-power part trivially.

#include <padic/core.hpp>

#include <algorithm>
#include <vector>

namespace padic {

/// <q>: the representative of q mod Z in [0, 1).
inline Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

/// Reduced a/N in (0, 1) with p not dividing N.
class RationalPoint {
 public:
  RationalPoint(const Integer& a, const Integer& N, unsigned p) : p_(p) {
    require(N > 0, "RationalPoint: N must be positive");
    require(a > 0 && a < N, "RationalPoint: need 0 < a < N");
    q_ = Rational(a, N);
    q_.canonicalize();
    require(!mpz_divisible_ui_p(q_.get_den_mpz_t(), p), "RationalPoint: p divides the denominator");
  }
  RationalPoint(const Rational& q, unsigned p) : RationalPoint(q.get_num(), q.get_den(), p) {}

  const Rational& value() const { return q_; }
  Integer a() const { return q_.get_num(); }
  Integer N() const { return q_.get_den(); }
  unsigned prime() const { return p_; }

  friend bool operator==(const RationalPoint& x, const RationalPoint& y) { return x.q_ == y.q_ && x.p_ == y.p_; }

 private:
  Rational q_;
  unsigned p_;
};

/// <p a / N>.
inline RationalPoint tau(const RationalPoint& z) { return {frac(Rational(z.prime()) * z.value()), z.prime()}; }

/// b/N with p b = a mod N, 0 < b < N.
inline RationalPoint tau_inv(const RationalPoint& z) {
  Integer N = z.N();
  Integer b = reduce(z.a() * inverse_mod(Integer(z.prime()), N), N);
  return {Rational(b, N), z.prime()};
}

/// tau^{-1} on an arbitrary element of Q/Z, returned in [0, 1). The
/// prime-to-p component is moved by tau^{-1}; the p-power component is fixed.
inline Rational tau_inv_mod1(const Rational& q, unsigned p) {
  Integer den = q.get_den();
  Integer pk = 1;
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    pk *= p;
  }
  // q = x/den + y/pk  (mod 1) by CRT on the denominator den * pk.
  Integer num = q.get_num();
  Integer x = reduce(num * inverse_mod(pk, den), den);
  Integer y = reduce(num * inverse_mod(den, pk), pk);
  Integer xb = den == 1 ? Integer(0) : reduce(x * inverse_mod(Integer(p), den), den);
  return frac(Rational(xb, den) + Rational(y, pk));
}

using RationalSet = std::vector<Rational>;

inline RationalSet sorted(RationalSet s) {
  for (Rational& q : s) q.canonicalize();
  std::sort(s.begin(), s.end());
  return s;
}

/// Removes one occurrence of x.
inline RationalSet minus(RationalSet s, const Rational& x) {
  auto it = std::find(s.begin(), s.end(), x);
  require(it != s.end(), "set difference: element not present");
  s.erase(it);
  return s;
}

struct SetComparison {
  RationalSet lhs;
  RationalSet rhs;
  bool equal() const { return sorted(lhs) == sorted(rhs); }
};

/// {tau^{-1}(z + k/d)} vs {tau^{-1}(dz)/d + k/d}, k = 0..d-1, for z in (0, 1/d).
inline SetComparison mult_sets(const Rational& z, unsigned d, unsigned p) {
  require(d >= 1 && d % p != 0, "mult_sets: d must be positive and prime to p");
  require(z > 0 && Rational(d) * z < 1, "mult_sets: need 0 < z < 1/d");
  SetComparison c;
  Rational dz = Rational(d) * z;
  Rational t = tau_inv(RationalPoint(dz, p)).value();
  for (unsigned k = 0; k < d; ++k) {
    c.lhs.push_back(tau_inv(RationalPoint(z + Rational(k, d), p)).value());
    c.rhs.push_back(t / d + Rational(k, d));
  }
  return c;
}

inline bool check_mult_sets(const Rational& z, unsigned d, unsigned p) { return mult_sets(z, d, p).equal(); }

/// For z in (0, 1/p): {tau^{-1}(z + k/p) : 1 <= k < p} vs {(z+k)/p : 0 <= k < p} - {z_1 + 1}.
inline SetComparison s_sets(const Rational& z, unsigned p) {
  require(z > 0 && Rational(p) * z < 1, "s_set: need 0 < z < 1/p");
  SetComparison c;
  for (unsigned k = 1; k < p; ++k) c.lhs.push_back(tau_inv_mod1(z + Rational(k, p), p));
  RationalSet all;
  for (unsigned k = 0; k < p; ++k) all.push_back((z + k) / p);
  c.rhs = minus(all, digits(z, p).z1 + 1);
  return c;
}

/// For z in (-1/p, 0): {tau^{-1}(z + k/p) : 1 <= k < p} vs {(z+k+1)/p : 0 <= k < p} - {(z+1)_1 + 1}.
inline SetComparison t_sets(const Rational& z, unsigned p) {
  require(z < 0 && Rational(p) * z > -1, "t_set: need -1/p < z < 0");
  SetComparison c;
  for (unsigned k = 1; k < p; ++k) c.lhs.push_back(tau_inv_mod1(z + Rational(k, p), p));
  RationalSet all;
  for (unsigned k = 0; k < p; ++k) all.push_back((z + k + 1) / p);
  c.rhs = minus(all, digits(z + 1, p).z1 + 1);
  return c;
}

inline bool check_s_set(const Rational& z, unsigned p) { return s_sets(z, p).equal(); }
inline bool check_t_set(const Rational& z, unsigned p) { return t_sets(z, p).equal(); }

/// For p not dividing z: the s-set {(z+k)/p : 0 <= k < p} - {(z+p-z_0)/p} against the
/// t-set {(z+k)/p : 1 <= k <= p} - {(z+1+p-(z+1)_0)/p}. They differ when z_0 = 1.
inline SetComparison s_t_witness(const Rational& z, unsigned p) {
  require(valuation(z, p) == 0, "s_t_witness: need p not dividing z");
  SetComparison c;
  RationalSet s, t;
  for (unsigned k = 0; k < p; ++k) s.push_back((z + k) / p);
  for (unsigned k = 1; k <= p; ++k) t.push_back((z + k) / p);
  c.lhs = minus(s, (z + p - digits(z, p).z0) / p);
  c.rhs = minus(t, (z + 1 + p - digits(z + 1, p).z0) / p);
  return c;
}

/// Multiplicative order of p modulo N (N >= 2, gcd(p, N) = 1).
inline unsigned long multiplicative_order(unsigned p, unsigned long N) {
  require(N >= 2 && N % p != 0, "multiplicative_order: need N >= 2 prime to p");
  unsigned long x = p % N, k = 1;
  while (x != 1) {
    x = (x * p) % N;
    ++k;
  }
  return k;
}

}  // namespace padic
