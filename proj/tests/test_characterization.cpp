#include <padic/characterization.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace padic;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// 1 + p^v * t with t a random residue; v_p(result - 1) >= v.
PadicNumber principal_unit(std::mt19937_64& rng, unsigned p, unsigned K, unsigned v) {
  std::uniform_int_distribution<long> d(0, 1000000);
  return PadicNumber::from_unit(p, 0, Integer(1) + pow_int(p, v) * d(rng), K);
}

AlphaSequence random_alpha(std::mt19937_64& rng, unsigned p, unsigned K, unsigned D) {
  AlphaSequence a{{}, static_cast<long>(D) + 1};
  for (unsigned k = 0; k < D; ++k) a.entries.push_back(principal_unit(rng, p, K, k + 1));
  return a;
}

Rational random_p_integral(std::mt19937_64& rng, unsigned p) {
  std::uniform_int_distribution<long> num(-300, 300), den(1, 30);
  long b;
  do b = den(rng);
  while (b % p == 0);
  return q(num(rng), b);
}

GammaLikeFunction constant_one(unsigned p, unsigned K) {
  return {p, K, [p, K](const Rational&) { return one(p, K); }};
}

}  // namespace

TEST(ExtractC, ConstantFunction) {
  CSequence c = extract_c(constant_one(5, 8), 6);
  ASSERT_EQ(c.entries.size(), 6u);
  for (const auto& ck : c.entries) EXPECT_TRUE(ck.is_identity(8));
}

TEST(ExtractC, PowerFunction) {
  const unsigned p = 3, K = 10;
  PadicNumber a = from_rational(Integer(7), Integer(1), p, K);
  GammaLikeFunction f{p, K, [a](const Rational& z) { return pow_star(a, z - q(1, 2)); }};
  for (const auto& ck : extract_c(f, 6).entries) EXPECT_TRUE((ck / flat(a)).is_identity(K));
}

TEST(AlphaFromC, KnownValues) {
  const unsigned p = 5, K = 8;
  CSequence ones;
  for (int k = 0; k < 5; ++k) ones.entries.push_back(FlatValue::identity(p, K));
  for (const auto& a : alpha_from_c(ones, 6).entries) EXPECT_EQ(a, one(p, K));

  std::mt19937_64 rng(1);
  CSequence c;
  for (int k = 0; k < 3; ++k) c.entries.push_back({Rational(0), principal_unit(rng, p, K, 1)});
  AlphaSequence a = alpha_from_c(c, 4);
  EXPECT_EQ(a.entries[0], c.entries[0].u);
  EXPECT_EQ(a.entries[1], c.entries[1].u * c.entries[0].u.pow(static_cast<long>(p - 1)));
  // alpha_2 = c_2 (c_0^p c_1)^{p-1}
  EXPECT_EQ(a.entries[2], c.entries[2].u * (c.entries[0].u.pow(static_cast<long>(p)) * c.entries[1].u)
                                              .pow(static_cast<long>(p - 1)));
  EXPECT_EQ(a.tail_valuation, 4);
}

TEST(AlphaFromC, RoundTrips) {
  std::mt19937_64 rng(2);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 10;
    CSequence c;
    for (int k = 0; k < 8; ++k) c.entries.push_back({Rational(0), principal_unit(rng, p, K, 1)});
    CSequence back = c_from_alpha(alpha_from_c(c, 9));
    for (int k = 0; k < 8; ++k) EXPECT_EQ(back.entries[k], c.entries[k]) << "p=" << p << " k=" << k;

    AlphaSequence a = random_alpha(rng, p, K, 8);
    AlphaSequence again = alpha_from_c(c_from_alpha(a), a.tail_valuation);
    for (int k = 0; k < 8; ++k) EXPECT_EQ(again.entries[k], a.entries[k]);
  }
}

TEST(AlphaFromC, RejectsNonUnits) {
  CSequence c;
  c.entries.push_back({Rational(1), one(3, 5)});
  EXPECT_THROW(alpha_from_c(c, 2), precondition_error);
}

TEST(Reconstruct, KnownValues) {
  std::mt19937_64 rng(3);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 6;
    AlphaSequence a = random_alpha(rng, p, K, 8);
    EXPECT_EQ(reconstruct(a, q(1, 2), K), one(p, K));

    PadicNumber prod = one(p, K);
    for (const auto& ak : a.entries) prod = prod * ak.with_precision(K);
    PadicNumber want = prod.pow(-static_cast<long>(p - 1) / 2);
    EXPECT_EQ(reconstruct(a, Rational(1), K), want);

    AlphaSequence trivial{std::vector<PadicNumber>(5, one(p, K)), 6};
    EXPECT_EQ(reconstruct(trivial, random_p_integral(rng, p), K), one(p, K));
  }
}

TEST(Reconstruct, IntegerPointsByBaseExpansion) {
  // For integer z >= 1, z - 1 has finitely many digits; the product is exact.
  std::mt19937_64 rng(4);
  const unsigned p = 3, K = 6, D = 8;
  AlphaSequence a = random_alpha(rng, p, K, D);
  for (long z = 1; z < 200; ++z) {
    PadicNumber want = one(p, K);
    long n = z - 1;
    for (unsigned k = 0; k < D; ++k, n /= p)
      want = want * a.entries[k].with_precision(K).pow((n % p) - static_cast<long>(p - 1) / 2);
    EXPECT_EQ(reconstruct(a, Rational(z), K), want) << z;
  }
}

TEST(Reconstruct, PrecisionCappedByTail) {
  std::mt19937_64 rng(5);
  AlphaSequence a = random_alpha(rng, 5, 10, 4);  // tail 5
  EXPECT_NO_THROW(reconstruct(a, Rational(2), 5));
  EXPECT_THROW(reconstruct(a, Rational(2), 6), precondition_error);
  EXPECT_THROW(reconstruct(a, q(1, 5), 4), precondition_error);
}

TEST(VerifyFE, ConstantAndPower) {
  EXPECT_TRUE(verify_fe(constant_one(5, 8), 3, q(2, 7)).is_identity(8));
  const unsigned p = 5, K = 10;
  PadicNumber a = from_rational(Integer(6), Integer(1), p, K);
  GammaLikeFunction f{p, K, [a](const Rational& z) { return pow_star(a, z - q(1, 2)); }};
  for (unsigned d : {2u, 3u, 4u, 6u}) EXPECT_TRUE(verify_fe(f, d, q(3, 11)).is_identity(K)) << d;
}

TEST(VerifyFE, BuiltFunctionsAreGammaLike) {
  std::mt19937_64 rng(6);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 8, D = 8;
    GammaLikeFunction f = build_f(random_alpha(rng, p, K, D), K);
    for (int i = 0; i < 10; ++i) {
      Rational z = random_p_integral(rng, p);
      for (unsigned d : {2u, 4u}) EXPECT_TRUE(verify_fe(f, d, z).is_identity(K - 1)) << "p=" << p << " z=" << z;
    }
  }
}

TEST(VerifyFE, DetectsNonGammaLike) {
  // f(z) = (1+p)^{z^2} is continuous but not gamma-like.
  const unsigned p = 5, K = 8;
  PadicNumber a = from_rational(Integer(1 + p), Integer(1), p, K);
  GammaLikeFunction f{p, K, [a](const Rational& z) { return pow_star(a, z * z); }};
  EXPECT_FALSE(verify_fe(f, 2, q(1, 3)).is_identity(K));
}

TEST(ExtractC, RecoversBuiltAlpha) {
  std::mt19937_64 rng(7);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 8, D = 8;
    AlphaSequence a = random_alpha(rng, p, K, D);
    AlphaSequence back = alpha_from_c(extract_c(build_f(a, K), D), a.tail_valuation);
    for (unsigned k = 0; k < D; ++k) EXPECT_TRUE(back.entries[k].agrees_relative(a.entries[k], K - 1)) << k;
  }
}

TEST(RatioInvariance, KnownValues) {
  EXPECT_TRUE(ratio_ord_invariance(constant_one(5, 6), q(1, 2), q(3, 7), 6));
  std::mt19937_64 rng(8);
  const unsigned p = 3, K = 8;
  GammaLikeFunction f = build_f(random_alpha(rng, p, K, 8), K);
  EXPECT_TRUE(ratio_ord_invariance(f, Rational(3), q(6, 5), K - 1));
  EXPECT_TRUE(ratio_ord_invariance(f, q(9, 2), Rational(18), K - 1));
  EXPECT_THROW(ratio_ord_invariance(f, Rational(1), Rational(3), K), precondition_error);
  FlatValue ord0 = flat(f(Rational(2)) / f(Rational(1)));
  FlatValue ord1 = flat(f(Rational(4)) / f(Rational(3)));
  EXPECT_FALSE((ord0 / ord1).is_identity(K - 1));
}

TEST(ClosedForm, ModeI) {
  std::mt19937_64 rng(9);
  const unsigned p = 5, K = 8;
  FlatValue c0{0, principal_unit(rng, p, K, 1)};
  GammaLikeFunction f = closed_form(c0, c0, ClosedFormMode::i);
  for (const auto& ck : extract_c(f, 6).entries) EXPECT_TRUE((ck / c0).is_identity(K - 1));
  EXPECT_TRUE(verify_fe(f, 3, q(2, 9)).is_identity(K - 1));
}

TEST(ClosedForm, ModeII) {
  std::mt19937_64 rng(10);
  const unsigned p = 3, K = 8, D = 8;
  FlatValue c0{0, principal_unit(rng, p, K, 1)}, c1{0, principal_unit(rng, p, K, 1)};
  GammaLikeFunction f = closed_form(c0, c1, ClosedFormMode::ii);
  CSequence c = extract_c(f, 6);
  EXPECT_TRUE((c.entries[0] / c0).is_identity(K - 1));
  for (unsigned k = 1; k < 6; ++k) EXPECT_TRUE((c.entries[k] / c1).is_identity(K - 1)) << k;
  GammaLikeFunction g = build_f(closed_form_alpha(c0, c1, ClosedFormMode::ii, D), D);
  for (int i = 0; i < 10; ++i) {
    Rational z = random_p_integral(rng, p);
    EXPECT_TRUE((flat(f(z)) / flat(g(z))).is_identity(D - 1)) << z;
  }
}

TEST(ClosedForm, ModeIIWithEqualConstantsIsModeI) {
  std::mt19937_64 rng(11);
  const unsigned p = 7, K = 8;
  FlatValue c0{0, principal_unit(rng, p, K, 1)};
  GammaLikeFunction fi = closed_form(c0, c0, ClosedFormMode::i), fii = closed_form(c0, c0, ClosedFormMode::ii);
  for (long a = 1; a < 10; ++a) {
    Rational z = q(a, 3);
    EXPECT_TRUE((flat(fi(z)) / flat(fii(z))).is_identity(K)) << z;
  }
}

TEST(ClosedForm, RejectsNonUnits) {
  FlatValue bad{Rational(1), one(3, 5)};
  EXPECT_THROW(closed_form(bad, bad, ClosedFormMode::i), precondition_error);
}
