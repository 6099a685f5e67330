#include <padic/analytic.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace padic;

namespace {

PadicNumber P(long a, long b, unsigned p, unsigned K) { return from_rational(Integer(a), Integer(b), p, K); }

PadicNumber random_unit(std::mt19937_64& rng, unsigned p, unsigned K) {
  std::uniform_int_distribution<long> d(1, 1000000);
  long a;
  do a = d(rng);
  while (a % static_cast<long>(p) == 0);
  return PadicNumber::from_unit(p, 0, a, K);
}

PadicNumber random_in_pZp(std::mt19937_64& rng, unsigned p, unsigned K) {
  std::uniform_int_distribution<long> d(1, 1000000);
  return PadicNumber::from_integer(p, Integer(d(rng)) * p, K);
}

// sum_{n=1}^{terms} (-1)^{n+1} x^n / n as an exact rational.
Rational log_series_exact(const Rational& x, int terms) {
  Rational s = 0, xn = 1;
  for (int n = 1; n <= terms; ++n) {
    xn *= x;
    Rational t = xn / n;
    s += (n % 2 ? t : Rational(-t));
  }
  s.canonicalize();
  return s;
}

}  // namespace

TEST(Log, TorsionAndPrimeVanish) {
  for (unsigned p : {3u, 5u, 7u}) {
    EXPECT_TRUE(log_p(PadicNumber::from_unit(p, 1, 1, 10)).is_zero());
    EXPECT_TRUE(log_p(-one(p, 10)).is_zero());
    EXPECT_TRUE(log_p(teichmuller(PadicNumber::from_unit(p, 0, 2, 10))).is_zero());
  }
}

TEST(Log, OnePlusPMatchesExactSeries) {
  // For x = p the terms p^n/n have valuation n - v(n); 60 terms cover 12 digits for p = 5.
  const unsigned p = 5, K = 12;
  PadicNumber got = log_p(P(1 + p, 1, p, K));
  PadicNumber want = from_rational(log_series_exact(Rational(p), 60), p, 30);
  EXPECT_EQ(got.valuation(), 1);
  EXPECT_TRUE(got.congruent(want, K));
  EXPECT_TRUE(exp_p(got).agrees_relative(P(1 + p, 1, p, K), K));
}

TEST(Log, Homomorphism) {
  std::mt19937_64 rng(3);
  for (unsigned p : {3u, 5u, 11u}) {
    const unsigned K = 15;
    for (int i = 0; i < 20; ++i) {
      PadicNumber a = random_unit(rng, p, K), b = random_unit(rng, p, K);
      PadicNumber lhs = log_p(a * b), rhs = log_p(a) + log_p(b);
      EXPECT_TRUE(lhs.congruent(rhs, K)) << a << " " << b;
    }
  }
}

TEST(Log, SeriesLengthCoversTarget) {
  // The first omitted term n has n - v_p(n) >= target.
  for (unsigned p : {3u, 5u, 7u})
    for (long target : {1L, 5L, 20L}) {
      long n = log_series_length(p, target);
      EXPECT_LT(n - valuation(Integer(n), p), target + 1);
      for (long m = n + 1; m < n + 50; ++m) EXPECT_GE(m - valuation(Integer(m), p), target);
    }
}

TEST(Exp, ZeroAndRoundTrip) {
  for (unsigned p : {3u, 5u, 7u}) {
    EXPECT_EQ(exp_p(PadicNumber::zero(p, 10)).residue(10), 1);
    PadicNumber x = P(1 + p, 1, p, 10);
    EXPECT_TRUE(exp_p(log_p(x)).agrees_relative(x, 10));
  }
}

TEST(Exp, Homomorphism) {
  std::mt19937_64 rng(4);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 12;
    for (int i = 0; i < 20; ++i) {
      PadicNumber a = random_in_pZp(rng, p, K), b = random_in_pZp(rng, p, K);
      EXPECT_TRUE(exp_p(a + b).congruent(exp_p(a) * exp_p(b), K));
    }
  }
}

TEST(Exp, RejectsUnits) { EXPECT_THROW(exp_p(one(5, 5)), precondition_error); }

TEST(Star, KnownValues) {
  PadicNumber s = star(P(2, 1, 3, 8));
  EXPECT_EQ(s, P(-2, 1, 3, 8));
  EXPECT_EQ(s.residue(1), 1);
  EXPECT_EQ(star(-one(7, 8)), one(7, 8));
  FlatValue f = flat(PadicNumber::from_unit(5, 2, 7, 8));
  EXPECT_EQ(f.v, 2);
  EXPECT_EQ(f.u, star(PadicNumber::from_unit(5, 0, 7, 8)));
  EXPECT_TRUE(flat(-one(5, 8)).is_identity(8));
}

TEST(Star, TeichmullerRouteEqualsLogRoute) {
  std::mt19937_64 rng(5);
  for (unsigned p : {3u, 5u, 7u, 13u}) {
    const unsigned K = 14;
    for (int i = 0; i < 30; ++i) {
      PadicNumber u = random_unit(rng, p, K);
      EXPECT_TRUE(star(u).congruent(star_via_log(u), K)) << u;
    }
  }
}

TEST(PowStar, KnownValues) {
  std::mt19937_64 rng(6);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned K = 10;
    for (int i = 0; i < 10; ++i) {
      PadicNumber d = random_unit(rng, p, K);
      EXPECT_EQ(pow_star(d, Rational(0)), one(p, K));
      EXPECT_TRUE(pow_star(d, Rational(1)).congruent(star(d), K));
      for (long m : {2L, 5L, -3L, 17L})
        EXPECT_TRUE(pow_star(d, Rational(m)).congruent(star(d.pow(m)), K)) << d << "^" << m;
    }
  }
}

TEST(PowStar, RationalExponentIsARoot) {
  // (d^{1/3})^3 = d* when p does not divide 3.
  const unsigned p = 5, K = 10;
  PadicNumber d = P(7, 1, p, K);
  PadicNumber r = pow_star(d, Rational(1, 3));
  EXPECT_TRUE(r.pow(3L).congruent(star(d), K));
}

TEST(FlatValue, GroupOperations) {
  std::mt19937_64 rng(7);
  const unsigned p = 7, K = 10;
  for (int i = 0; i < 10; ++i) {
    FlatValue a = flat(random_unit(rng, p, K) * PadicNumber::from_unit(p, 3, 1, K));
    FlatValue b = flat(random_unit(rng, p, K));
    EXPECT_TRUE(((a * b) / b / a).is_identity(K));
    EXPECT_TRUE((a.pow(4) / (a * a * a * a)).is_identity(K));
    FlatValue r = a.root(3);
    EXPECT_EQ(r.v, 1);
    EXPECT_TRUE((r.pow(3) / a).is_identity(K));
  }
  EXPECT_THROW(flat(one(p, K)).root(7), precondition_error);
}

TEST(Binomial, KnownValues) {
  EXPECT_EQ(binom_padic(Rational(-1, 2), Integer(0), 5, 6), one(5, 6));
  Rational x(1, 5);
  x -= 1;
  EXPECT_TRUE(binom_padic(x, Integer(1), 3, 6).agrees_relative(from_rational(x, 3, 6), 6));
  EXPECT_TRUE(binom_padic(Rational(-1, 2), Integer(2), 5, 6).agrees_relative(P(3, 8, 5, 6), 6));
}

TEST(Binomial, MatchesExactRational) {
  for (unsigned p : {3u, 5u, 7u})
    for (const Rational& x : {Rational(-1, 2), Rational(4, 5 == static_cast<long>(p) ? 7 : 5), Rational(-6, 7),
                              Rational(3), Rational(-11)}) {
      if (mpz_divisible_ui_p(x.get_den().get_mpz_t(), p)) continue;
      Rational b = 1;
      for (long k = 0; k <= 50; ++k) {
        if (k > 0) {
          b *= (x - (k - 1)) / Rational(k);
          b.canonicalize();
        }
        for (auto s : {ProductStrategy::direct, ProductStrategy::blocked}) {
          PadicNumber got = binom_padic(x, Integer(k), p, 8, s);
          if (b == 0) {
            EXPECT_TRUE(got.is_zero());
            continue;
          }
          PadicNumber want = from_rational(b, p, 8);
          ASSERT_FALSE(got.is_zero()) << x << " k=" << k;
          EXPECT_TRUE(got.agrees_relative(want, 8)) << "p=" << p << " x=" << x << " k=" << k;
        }
      }
    }
}
