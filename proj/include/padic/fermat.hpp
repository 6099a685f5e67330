#pragma once

// Frobenius eigenvalues on the Fermat curve x^N + y^N = 1.
//
// The differential x^r y^{s-N} dx/x expands at (0, 1) with coefficients
//
//   b_{r,s}(n) = (-1)^k binom(s/N - 1, k),  n = r + kN   (0 otherwise)
//
// and Frobenius sends eta_{r,s} to alpha_{r',s'} eta_{r',s'}, pr = r',
// ps = s' mod N, where, with c = (pr - r')/N,
//
//   alpha_{r',s'} = lim_{k -> -r/N} (-1)^c p binom(s/N-1, k) / binom(s'/N-1, pk+c).
//
// The limit runs over k_m = -r/N mod p^m. Successive k_m can coincide (when
// the next base-p digit of -r/N is 0), so iterates are taken over distinct
// k_m only; repeating an iterate proves nothing about convergence.
//
// For p = 1 mod N, a Jacobi sum over F_p in Teichmuller characters gives an
// independent value to compare against.

#include <padic/analytic.hpp>
#include <padic/core.hpp>
#include <padic/gamma.hpp>
#include <padic/period_ledger.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace padic {

struct FermatParams {
  unsigned p;
  long N;

  FermatParams(unsigned prime, long level) : p(prime), N(level) {
    require(p >= 3 && is_prime(p), "p must be an odd prime, got " + std::to_string(p));
    require(N >= 3, "N must be at least 3");
    require(N % static_cast<long>(p) != 0, "p divides N");
  }
};

inline long mod_level(long a, long N) {
  long r = a % N;
  return r < 0 ? r + N : r;
}

inline void require_pair(long r, long s, long N) {
  require(r > 0 && r < N && s > 0 && s < N, "need 0 < r, s < N");
  require(r + s != N, "r + s = N");
}

/// b_{r,s}(n) as an exact rational.
inline Rational coeff(long r, long s, long n, const FermatParams& fp) {
  require_pair(r, s, fp.N);
  require(n >= 1, "coeff: n must be positive");
  if (n < r || (n - r) % fp.N != 0) return 0;
  long k = (n - r) / fp.N;
  Rational x(s - fp.N, fp.N);  // s/N - 1
  x.canonicalize();
  Rational b = 1;
  for (long j = 0; j < k; ++j) b *= (x - j) / (j + 1);
  if (k % 2 == 1) b = -b;
  return b;
}

struct FrobeniusEigenvalue {
  unsigned p;
  long N, r, s, r_prime, s_prime;
  PadicNumber value;
  unsigned K;
  unsigned m;                            // depth whose iterate confirmed the stopping rule
  std::vector<unsigned> depths;          // depths of the distinct iterates computed
  std::vector<PadicNumber> iterates;
};

/// k_m: the integer in [0, p^m) congruent to -r/N mod p^m.
inline Integer limit_index(long r, long N, unsigned p, unsigned m) {
  if (m == 0) return 0;
  Integer mod = pow_int(p, m);
  return rational_residue(Rational(-r, N), mod);
}

/// One iterate of the limit formula, at relative precision W.
inline PadicNumber alpha_iterate(long r, long s, const FermatParams& fp, const Integer& k, unsigned W) {
  const unsigned p = fp.p;
  const long N = fp.N;
  const long rp = mod_level(static_cast<long>(p) * r, N);
  const long sp = mod_level(static_cast<long>(p) * s, N);
  const long c = (static_cast<long>(p) * r - rp) / N;
  Rational xs(s - N, N), xsp(sp - N, N);
  xs.canonicalize();
  xsp.canonicalize();
  PadicNumber num = binom_padic(xs, k, p, W);
  PadicNumber den = binom_padic(xsp, Integer(p) * k + c, p, W);
  require(!num.is_zero() && !den.is_zero(), "alpha_iterate: vanishing binomial");
  PadicNumber v = from_rational(Integer(p), Integer(1), p, W) * num / den;
  return c % 2 == 1 ? -v : v;
}

/// alpha_{r',s'} by successive distinct iterates. Stops when two successive
/// iterates agree in K relative digits and one further iterate agrees too.
inline FrobeniusEigenvalue alpha_limit(long r, long s, const FermatParams& fp, unsigned K, unsigned depth_cap = 12,
                                       unsigned guard = 5) {
  require_pair(r, s, fp.N);
  require(K >= 1, "alpha_limit: precision must be at least 1");
  const unsigned W = K + guard;
  FrobeniusEigenvalue out{fp.p, fp.N, r, s, mod_level(static_cast<long>(fp.p) * r, fp.N),
                          mod_level(static_cast<long>(fp.p) * s, fp.N), PadicNumber::zero(fp.p, 0), K, 0, {}, {}};
  Integer last_k = -1;
  unsigned agreeing = 0;  // length of the current run of agreeing successive iterates
  for (unsigned m = 0; m <= depth_cap; ++m) {
    Integer k = limit_index(r, fp.N, fp.p, m);
    if (k == last_k) continue;
    last_k = k;
    PadicNumber a = alpha_iterate(r, s, fp, k, W);
    if (!out.iterates.empty() && out.iterates.back().agrees_relative(a, K)) {
      ++agreeing;
      if (agreeing == 1) out.m = m;
    } else {
      agreeing = 0;
    }
    out.depths.push_back(m);
    out.iterates.push_back(a);
    if (agreeing == 2) {
      out.value = out.iterates.back().with_precision(K);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "alpha_limit: no convergence for p=" << fp.p << " N=" << fp.N << " r=" << r << " s=" << s
      << " within depth " << depth_cap << "; iterates:";
  for (std::size_t i = 0; i < out.iterates.size(); ++i) msg << " [m=" << out.depths[i] << "] " << out.iterates[i];
  throw convergence_error(msg.str());
}

/// sum_{x=2}^{p-1} chi_r(x) chi_s(1-x), chi_t = omega^{t(p-1)/N}, mod p^{K+guard}.
inline PadicNumber jacobi_oracle(long r, long s, const FermatParams& fp, unsigned K, unsigned guard = 5) {
  const unsigned p = fp.p;
  const long N = fp.N;
  require((p - 1) % N == 0, "jacobi_oracle: requires p = 1 mod N");
  require(r >= 0 && r < N && s >= 0 && s < N, "jacobi_oracle: need 0 <= r, s < N");
  const unsigned W = K + guard;
  const Integer mod = pow_int(p, W);
  std::vector<Integer> omega(p);
  for (unsigned x = 1; x < p; ++x) omega[x] = teichmuller(PadicNumber::from_unit(p, 0, x, W)).unit();
  const long q = static_cast<long>(p - 1) / N;
  Integer sum = 0;
  for (unsigned x = 2; x < p; ++x) {
    Integer a = pow_mod(omega[x], Integer(r * q), mod);
    Integer b = pow_mod(omega[p + 1 - x], Integer(s * q), mod);
    sum = reduce(sum + a * b, mod);
  }
  return PadicNumber::from_residue(p, sum, W);
}

struct OracleCandidate {
  int sign;
  long e;
  long t;
};

struct MatchReport {
  std::vector<OracleCandidate> matches;
  bool unique() const { return matches.size() == 1; }
};

/// Searches +-J(chi_{er}, chi_{es}) p^t, e in (Z/N)^x, |t| <= max_shift, for
/// agreement with alpha in `digits` relative digits.
inline MatchReport oracle_match(const FrobeniusEigenvalue& alpha, const FermatParams& fp, unsigned digits,
                                long max_shift = 2) {
  require((fp.p - 1) % fp.N == 0, "oracle_match: requires p = 1 mod N");
  MatchReport rep;
  const PadicNumber pp = PadicNumber::from_unit(fp.p, 1, 1, digits);
  for (long e : units_mod(fp.N)) {
    PadicNumber J = jacobi_oracle(mod_level(e * alpha.r, fp.N), mod_level(e * alpha.s, fp.N), fp, digits);
    if (J.is_zero()) continue;
    for (long t = -max_shift; t <= max_shift; ++t) {
      PadicNumber cand = J * pp.pow(t);
      for (int sign : {1, -1}) {
        PadicNumber c = sign == 1 ? cand : -cand;
        if (c.precision() >= digits && alpha.value.precision() >= digits && alpha.value.agrees_relative(c, digits))
          rep.matches.push_back({sign, e, t});
      }
    }
  }
  return rep;
}

struct ColemanReport {
  FlatValue residual;                // star(prod alpha) / star(Gamma_p(a'/N))^N
  long total_valuation;              // sum over s' of ord_p alpha_{a',s'}
  std::vector<FrobeniusEigenvalue> alphas;
  PadicNumber U, V;
  bool ok(long digits) const { return residual.is_identity(digits); }
};

/// Compares star(prod_{s' != N-a'} alpha_{a',s'}) with star(Gamma_p(a'/N))^N.
inline ColemanReport coleman_check(long a_prime, const FermatParams& fp, unsigned K, unsigned depth_cap = 12,
                                   unsigned guard = 5) {
  const long N = fp.N;
  require(a_prime > 0 && a_prime < N && std::gcd(a_prime, N) == 1, "coleman_check: need gcd(a', N) = 1");
  const long pinv = inverse_mod64(static_cast<long>(fp.p), N);
  const long r = mod_level(a_prime * pinv, N);
  PadicNumber prod = one(fp.p, K);
  long total_v = 0;
  std::vector<FrobeniusEigenvalue> alphas;
  for (long sp = 1; sp < N; ++sp) {
    if (sp == N - a_prime) continue;
    long s = mod_level(sp * pinv, N);
    FrobeniusEigenvalue a = alpha_limit(r, s, fp, K, depth_cap, guard);
    total_v += a.value.valuation();
    prod = prod * a.value;
    alphas.push_back(std::move(a));
  }
  PadicNumber U = star(prod);
  PadicNumber V = star(gamma_p(Rational(a_prime, N), fp.p, K, guard).value).pow(N);
  return {FlatValue{Rational(0), U / V}, total_v, std::move(alphas), U, V};
}

}  // namespace padic
