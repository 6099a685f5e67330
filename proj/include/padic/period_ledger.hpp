#pragma once

// Exponent vectors on the formal period space of Q(zeta_N): a rational
// coefficient for each b in (Z/N)^x plus a pi-exponent. Relations among
// gamma values mod algebraic numbers become exact linear identities here.
// A vector is trivial when piExp = 0 and its coefficients are symmetric
// under b -> -b (the image of 1 + complex conjugation).

#include <padic/arith.hpp>

#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace padic {

inline std::vector<long> units_mod(long N) {
  std::vector<long> u;
  for (long b = 1; b < N; ++b)
    if (std::gcd(b, N) == 1) u.push_back(b);
  if (N == 1) u.push_back(0);
  return u;
}

/// <a/N> for integers, in [0, 1).
inline Rational frac_of(long a, long N) {
  long r = a % N;
  if (r < 0) r += N;
  Rational q(r, N);
  q.canonicalize();
  return q;
}

struct PeriodVector {
  long N = 1;
  std::map<long, Rational> coeffs;  // keys: exactly the units mod N
  Rational piExp = 0;

  static PeriodVector zero(long N) {
    require(N >= 1, "PeriodVector: level must be positive");
    PeriodVector v;
    v.N = N;
    for (long b : units_mod(N)) v.coeffs[b] = 0;
    return v;
  }
  static PeriodVector ones(long N) {
    PeriodVector v = zero(N);
    for (auto& [b, c] : v.coeffs) c = 1;
    return v;
  }

  PeriodVector& operator+=(const PeriodVector& o) {
    require(N == o.N, "PeriodVector: level mismatch");
    for (auto& [b, c] : coeffs) c += o.coeffs.at(b);
    piExp += o.piExp;
    return *this;
  }
  PeriodVector& operator-=(const PeriodVector& o) { return *this += o * Rational(-1); }
  friend PeriodVector operator+(PeriodVector a, const PeriodVector& b) { return a += b; }
  friend PeriodVector operator-(PeriodVector a, const PeriodVector& b) { return a -= b; }
  friend PeriodVector operator*(PeriodVector a, Rational s) {
    s.canonicalize();
    for (auto& [b, c] : a.coeffs) c *= s;
    a.piExp *= s;
    return a;
  }

  bool is_zero() const {
    if (piExp != 0) return false;
    for (const auto& [b, c] : coeffs)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const PeriodVector& a, const PeriodVector& b) {
    return a.N == b.N && a.coeffs == b.coeffs && a.piExp == b.piExp;
  }

  friend std::ostream& operator<<(std::ostream& os, const PeriodVector& v) {
    os << "N=" << v.N << " pi^" << v.piExp.get_str() << " [";
    bool first = true;
    for (const auto& [b, c] : v.coeffs) {
      os << (first ? "" : ", ") << b << ":" << c.get_str();
      first = false;
    }
    return os << "]";
  }
};

/// coeffs_b = 1/2 - <ab/N>, piExp = 1/2 - <a/N>; gcd(a, N) > 1 allowed.
inline PeriodVector gamma_divisor(long a, long N) {
  require(N >= 2, "gamma_divisor: N must be at least 2");
  require(a % N != 0, "gamma_divisor: a/N is an integer");
  PeriodVector v = PeriodVector::zero(N);
  const Rational half(1, 2);
  for (auto& [b, c] : v.coeffs) c = half - frac_of(a * b, N);
  v.piExp = half - frac_of(a, N);
  return v;
}

struct CMType {
  long N, r, s;
  std::set<long> members;
};

/// b is a member iff <br/N> + <bs/N> + <b(N-r-s)/N> = 1.
inline CMType cm_type(long r, long s, long N) {
  require(N >= 3, "cm_type: N must be at least 3");
  require(r > 0 && r < N && s > 0 && s < N, "cm_type: need 0 < r, s < N");
  require(r + s != N, "cm_type: r + s = N");
  CMType t{N, r, s, {}};
  for (long b : units_mod(N))
    if (frac_of(b * r, N) + frac_of(b * s, N) + frac_of(b * (N - r - s), N) == 1) t.members.insert(b);
  return t;
}

inline PeriodVector indicator(const CMType& t) {
  PeriodVector v = PeriodVector::zero(t.N);
  for (long b : t.members) v.coeffs[b] = 1;
  return v;
}

/// piExp = 0 and coeffs_b = coeffs_{-b}.
inline bool is_trivial(const PeriodVector& v) {
  if (v.piExp != 0) return false;
  for (const auto& [b, c] : v.coeffs)
    if (c != v.coeffs.at((v.N - b) % v.N)) return false;
  return true;
}

/// Gamma(a/N) Gamma(1 - a/N): the divisor sum vanishes identically.
inline bool reflection_check(long a, long N) {
  require(a > 0 && a < N, "reflection_check: need 0 < a < N");
  return (gamma_divisor(a, N) + gamma_divisor(N - a, N)).is_zero();
}

struct MultiplicationReport {
  PeriodVector residual;  // sum_k divisor(a/N + k/d) - divisor(da/N)
  bool coeffs_zero;
  bool pi_match;
  bool ok() const { return coeffs_zero && pi_match && is_trivial(residual); }
};

/// prod_k Gamma(a/N + k/d) against Gamma(da/N) for d | N.
inline MultiplicationReport multiplication_report(long a, long N, long d) {
  require(d >= 1 && N % d == 0, "multiplication_check: d must divide N");
  require(a % N != 0, "multiplication_check: a/N is an integer");
  require((d * a) % N != 0, "multiplication_check: d a / N is an integer (degenerate translate)");
  const long step = N / d;
  PeriodVector sum = PeriodVector::zero(N);
  for (long k = 0; k < d; ++k) {
    long ak = a + k * step;  // a/N + k/d = (a + kN/d)/N
    require(ak % N != 0, "multiplication_check: translate a/N + k/d is an integer");
    sum += gamma_divisor(ak, N);
  }
  MultiplicationReport rep{sum - gamma_divisor(d * a, N), true, true};
  for (const auto& [b, c] : rep.residual.coeffs)
    if (c != 0) rep.coeffs_zero = false;
  rep.pi_match = rep.residual.piExp == 0;
  return rep;
}

inline bool multiplication_check(long a, long N, long d) { return multiplication_report(a, N, d).ok(); }

/// divisor(a, N) = (1/N) sum_{s != N-a} Xi_{a,s} - (N-2)/(2N) * ones, coefficients only.
inline bool decompose_identity(long a, long N) {
  require(N >= 3 && a > 0 && a < N && std::gcd(a, N) == 1, "decompose_identity: need gcd(a, N) = 1");
  PeriodVector rhs = PeriodVector::zero(N);
  for (long s = 1; s < N; ++s) {
    if (s == N - a) continue;
    rhs += indicator(cm_type(a, s, N));
  }
  rhs = rhs * Rational(1, N) - PeriodVector::ones(N) * Rational(N - 2, 2 * N);
  PeriodVector lhs = gamma_divisor(a, N);
  lhs.piExp = 0;
  return lhs == rhs;
}

/// Level N' -> N (N | N'): sums coefficients over b' = b mod N. piExp carries over.
inline PeriodVector res_map(const PeriodVector& v, long N) {
  require(N >= 1 && v.N % N == 0, "res_map: target level must divide source level");
  PeriodVector out = PeriodVector::zero(N);
  for (const auto& [b, c] : v.coeffs) out.coeffs[N == 1 ? 0 : b % N] += c;
  out.piExp = v.piExp;
  return out;
}

/// Level N -> N' (N | N'): each coefficient goes to every lift. piExp carries over.
inline PeriodVector inf_map(const PeriodVector& v, long Nprime) {
  require(Nprime >= 1 && Nprime % v.N == 0, "inf_map: source level must divide target level");
  PeriodVector out = PeriodVector::zero(Nprime);
  for (auto& [b, c] : out.coeffs) c = v.coeffs.at(v.N == 1 ? 0 : b % v.N);
  out.piExp = v.piExp;
  return out;
}

/// sum_b x_b y_b over the coefficients.
inline Rational pairing(const PeriodVector& x, const PeriodVector& y) {
  require(x.N == y.N, "pairing: level mismatch");
  Rational s = 0;
  for (const auto& [b, c] : x.coeffs) s += c * y.coeffs.at(b);
  return s;
}

}  // namespace padic
