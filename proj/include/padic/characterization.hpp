#pragma once

// Gamma-like functions: continuous f : Z_p -> C_p^x satisfying
//
//   prod_{k<d} f(z + k/d) = f(dz)   mod mu_inf      (p does not divide d)
//
// are determined mod mu_inf by c_k = (f(p^k + 1) / f(p^k))^flat. With
//
//   alpha_k = c_k prod_{i<k} c_i^{p^{k-1-i}(p-1)}
//
// and z - 1 = sum x_k p^k, f(z) = prod_k alpha_k^{x_k - (p-1)/2} mod mu_inf.
// Everything here compares values through flat, so roots of unity never
// enter a comparison.

#include <padic/analytic.hpp>
#include <padic/core.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace padic {

/// An evaluation oracle on p-integral rationals with a precision contract:
/// values are nonzero and carry at least `precision` relative digits.
struct GammaLikeFunction {
  unsigned p;
  unsigned precision;
  std::function<PadicNumber(const Rational&)> eval;

  PadicNumber operator()(const Rational& z) const { return eval(z); }
};

struct CSequence {
  std::vector<FlatValue> entries;
};

/// Principal units alpha_0 .. alpha_{D-1} plus a declared lower bound on
/// v_p(alpha_k - 1) for every omitted k >= D. That bound caps the precision
/// of any truncated product.
struct AlphaSequence {
  std::vector<PadicNumber> entries;
  long tail_valuation;
};

/// c_k = flat(f(p^k + 1) / f(p^k)) for k < depth.
inline CSequence extract_c(const GammaLikeFunction& f, unsigned depth) {
  CSequence c;
  for (unsigned k = 0; k < depth; ++k) {
    Rational pk(pow_int(f.p, k));
    FlatValue ck = flat(f(pk + 1) / f(pk));
    require(ck.v == 0, "extract_c: ratio has nonzero valuation");
    c.entries.push_back(std::move(ck));
  }
  return c;
}

/// alpha_k = c_k (prod_{i<k} c_i^{p^{k-1-i}})^{p-1}, via A_k = c_k A_{k-1}^p.
inline AlphaSequence alpha_from_c(const CSequence& c, long tail_valuation) {
  AlphaSequence a{{}, tail_valuation};
  if (c.entries.empty()) return a;
  const unsigned p = c.entries.front().prime();
  PadicNumber A = one(p, c.entries.front().precision());
  for (const FlatValue& ck : c.entries) {
    require(ck.v == 0, "alpha_from_c: c_k must be a principal unit");
    a.entries.push_back(ck.u * A.pow(static_cast<long>(p - 1)));
    A = ck.u * A.pow(static_cast<long>(p));
  }
  return a;
}

/// Inverse of alpha_from_c: c_k = alpha_k / (prod_{i<k} alpha_i)^{p-1}.
inline CSequence c_from_alpha(const AlphaSequence& a) {
  CSequence c;
  if (a.entries.empty()) return c;
  const unsigned p = a.entries.front().prime();
  PadicNumber A = one(p, a.entries.front().precision());
  for (const PadicNumber& ak : a.entries) {
    c.entries.push_back({Rational(0), ak / A.pow(static_cast<long>(p - 1))});
    A = A * ak;
  }
  return c;
}

/// Digits x_0 .. x_{D-1} of z - 1 in {0, .., p-1}.
inline std::vector<long> shifted_digits(const Rational& z, unsigned p, unsigned D) {
  Integer r = rational_residue(z - 1, pow_int(p, D));
  std::vector<long> x;
  for (unsigned k = 0; k < D; ++k) {
    x.push_back(static_cast<long>(mpz_fdiv_ui(r.get_mpz_t(), p)));
    mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), p);
  }
  return x;
}

/// prod_{k<D} alpha_k^{x_k - (p-1)/2} at K digits. Needs K <= tail_valuation.
inline PadicNumber reconstruct(const AlphaSequence& a, const Rational& z, unsigned K) {
  require(!a.entries.empty(), "reconstruct: empty alpha sequence");
  require(static_cast<long>(K) <= a.tail_valuation,
          "reconstruct: alpha depth/decay cannot reach the requested precision");
  const unsigned p = a.entries.front().prime();
  require(mpz_divisible_ui_p(z.get_den().get_mpz_t(), p) == 0, "reconstruct: input is not a p-adic integer");
  const long half = static_cast<long>(p - 1) / 2;
  std::vector<long> x = shifted_digits(z, p, static_cast<unsigned>(a.entries.size()));
  PadicNumber out = one(p, K);
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    out = out * a.entries[k].with_precision(K).pow(x[k] - half);
  }
  return out.with_precision(K);
}

/// The function defined by the digit-expansion product.
inline GammaLikeFunction build_f(AlphaSequence a, unsigned K) {
  require(!a.entries.empty(), "build_f: empty alpha sequence");
  const unsigned p = a.entries.front().prime();
  return {p, K, [a = std::move(a), K](const Rational& z) { return reconstruct(a, z, K); }};
}

/// flat( prod_{k<d} f(z + k/d) / f(dz) ).
inline FlatValue verify_fe(const GammaLikeFunction& f, unsigned d, const Rational& z) {
  require(d >= 1 && d % f.p != 0, "verify_fe: d must be positive and prime to p");
  PadicNumber lhs = one(f.p, f.precision);
  for (unsigned k = 0; k < d; ++k) {
    Rational zk = z + Rational(k, d);
    zk.canonicalize();
    lhs = lhs * f(zk);
  }
  Rational dz = Rational(d) * z;
  return flat(lhs / f(dz));
}

/// flat(f(z+1)/f(z)) == flat(f(z'+1)/f(z')) to `digits` digits; ord_p z must equal ord_p z'.
inline bool ratio_ord_invariance(const GammaLikeFunction& f, const Rational& z, const Rational& zp,
                                 unsigned digits) {
  auto ord = [&](const Rational& q) { return q == 0 ? -1L : valuation(q, f.p); };
  require(z != 0 && zp != 0 && ord(z) == ord(zp), "ratio_ord_invariance: inputs must share ord_p");
  FlatValue a = flat(f(z + 1) / f(z));
  FlatValue b = flat(f(zp + 1) / f(zp));
  return (a / b).is_identity(digits);
}

enum class ClosedFormMode { i, ii };

/// mode i:  c0^{z - 1/2}
/// mode ii: c0^{z - 1/2} (c1/c0)^{z_1 + 1/2}
inline GammaLikeFunction closed_form(const FlatValue& c0, const FlatValue& c1, ClosedFormMode mode) {
  require(c0.v == 0 && c1.v == 0, "closed_form: c0 and c1 must be principal units");
  const unsigned p = c0.prime();
  const unsigned K = std::min(c0.precision(), c1.precision());
  PadicNumber a = c0.u.with_precision(K);
  PadicNumber b = (c1.u / c0.u).with_precision(K);
  return {p, K, [=](const Rational& z) {
            PadicNumber v = pow_star(a, z - Rational(1, 2));
            if (mode == ClosedFormMode::ii) v = v * pow_star(b, digits(z, p).z1 + Rational(1, 2));
            return v;
          }};
}

/// alpha for a constant (mode i) or eventually constant (mode ii) c-sequence:
/// alpha_0 = c0, alpha_k = c0^{p^k} (c1/c0)^{p^{k-1}}.
inline AlphaSequence closed_form_alpha(const FlatValue& c0, const FlatValue& c1, ClosedFormMode mode,
                                       unsigned depth) {
  CSequence c;
  for (unsigned k = 0; k < depth; ++k)
    c.entries.push_back(k == 0 || mode == ClosedFormMode::i ? c0 : c1);
  // alpha_k - 1 = (c0^{p^k} (c1/c0)^{p^{k-1}}) - 1 has valuation >= k for principal units.
  return alpha_from_c(c, static_cast<long>(depth));
}

}  // namespace padic
