#include <padic/progression.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace padic;

namespace {

// Exact product of the integers y, y+1, ..., y+count-1 with p-parts removed.
ValuedUnit exact_integer_progression(long y, long count, unsigned p, unsigned K) {
  ValuedUnit out;
  Integer prod = 1;
  for (long j = 0; j < count; ++j) {
    Integer t = y + j;
    if (t == 0) return ValuedUnit{true, 0, 0};
    out.valuation += valuation(t, p);
    prod *= strip_p(t, p);
  }
  out.unit = reduce(prod, pow_int(p, K));
  return out;
}

// Exact rational product of (a/b + j) with p-parts removed from numerators.
ValuedUnit exact_rational_progression(const Rational& y, long count, unsigned p, unsigned K) {
  ValuedUnit out;
  Rational prod = 1;
  for (long j = 0; j < count; ++j) {
    Rational t = y + j;
    Integer n = t.get_num();
    out.valuation += valuation(n, p);
    prod *= Rational(strip_p(n, p), t.get_den());
  }
  prod.canonicalize();
  out.unit = rational_residue(prod, pow_int(p, K));
  return out;
}

}  // namespace

TEST(UnitProgression, DirectEqualsBlocked) {
  std::mt19937_64 rng(1);
  for (unsigned p : {3u, 5u, 7u}) {
    for (unsigned K : {1u, 3u, 6u}) {
      Integer mod = pow_int(p, K);
      std::uniform_int_distribution<long> yd(0, mod.get_si() - 1), nd(0, 3000);
      for (int i = 0; i < 40; ++i) {
        Integer y = yd(rng), n = nd(rng);
        EXPECT_EQ(unit_progression_product(y, n, p, K, ProductStrategy::direct),
                  unit_progression_product(y, n, p, K, ProductStrategy::blocked))
            << "p=" << p << " K=" << K << " y=" << y << " n=" << n;
      }
    }
  }
}

TEST(UnitProgression, LongRunsAgree) {
  // Counts spanning several full blocks of p^K.
  for (unsigned p : {3u, 5u}) {
    const unsigned K = 4;
    for (long n : {81L, 625L, 2000L, 20000L, 123457L})
      EXPECT_EQ(unit_progression_product(Integer(2), Integer(n), p, K, ProductStrategy::direct),
                unit_progression_product(Integer(2), Integer(n), p, K, ProductStrategy::blocked))
          << "p=" << p << " n=" << n;
  }
}

TEST(UnitProgression, FullPeriodIsMinusOne) {
  // The units of Z/p^K multiply to -1 for odd p.
  for (unsigned p : {3u, 5u, 7u, 11u})
    for (unsigned K : {1u, 2u, 4u}) {
      Integer mod = pow_int(p, K);
      EXPECT_EQ(unit_progression_product(Integer(1), mod, p, K), mod - 1);
    }
}

TEST(UnitProgression, LargeModulusUsesMpzRing) {
  const unsigned p = 3, K = 45;  // 3^45 exceeds 62 bits
  Integer direct = unit_progression_product(Integer(7), Integer(5000), p, K, ProductStrategy::direct);
  Integer blocked = unit_progression_product(Integer(7), Integer(5000), p, K, ProductStrategy::blocked);
  EXPECT_EQ(direct, blocked);
  Integer mod = pow_int(p, K), naive = 1;
  for (long j = 7; j < 5007; ++j)
    if (j % p != 0) naive = reduce(naive * j, mod);
  EXPECT_EQ(direct, naive);
}

TEST(Progression, MatchesExactIntegerProduct) {
  for (unsigned p : {3u, 5u, 7u})
    for (long y = 1; y <= 30; ++y)
      for (long n : {0L, 1L, 7L, 50L, 200L}) {
        ValuedUnit want = exact_integer_progression(y, n, p, 8);
        for (auto s : {ProductStrategy::direct, ProductStrategy::blocked}) {
          ValuedUnit got = progression_product(Rational(y), Integer(n), p, 8, s);
          EXPECT_EQ(got.zero, want.zero);
          EXPECT_EQ(got.valuation, want.valuation) << "p=" << p << " y=" << y << " n=" << n;
          EXPECT_EQ(got.unit, want.unit) << "p=" << p << " y=" << y << " n=" << n;
        }
      }
}

TEST(Progression, MatchesExactRationalProduct) {
  std::mt19937_64 rng(2);
  for (unsigned p : {3u, 5u, 7u}) {
    std::uniform_int_distribution<long> ad(-200, 200), bd(1, 40), nd(0, 150);
    for (int i = 0; i < 60; ++i) {
      long b;
      do b = bd(rng);
      while (b % p == 0);
      Rational y(ad(rng), b);
      y.canonicalize();
      long n = nd(rng);
      if (y.get_den() == 1 && y <= 0 && -y < n) continue;
      ValuedUnit want = exact_rational_progression(y, n, p, 7);
      for (auto s : {ProductStrategy::direct, ProductStrategy::blocked}) {
        ValuedUnit got = progression_product(y, Integer(n), p, 7, s);
        EXPECT_EQ(got.valuation, want.valuation) << y << " n=" << n;
        EXPECT_EQ(got.unit, want.unit) << y << " n=" << n;
      }
    }
  }
}

TEST(Progression, ZeroFactorDetected) {
  ValuedUnit v = progression_product(Rational(-3), Integer(5), 5, 4);
  EXPECT_TRUE(v.zero);
  EXPECT_FALSE(progression_product(Rational(-3), Integer(3), 5, 4).zero);
}

TEST(Progression, RejectsBadInputs) {
  Rational y(1, 3);
  EXPECT_THROW(progression_product(y, Integer(4), 3, 4), precondition_error);
  EXPECT_THROW(progression_product(Rational(1), Integer(-1), 3, 4), precondition_error);
}

TEST(Progression, HugeCountOnlyOnBlockedRoute) {
  // 10^15 terms: the blocked route handles it; valuation by Legendre on (y=1).
  Integer n("1000000000000000");
  ValuedUnit v = progression_product(Rational(1), n, 3, 5);
  long legendre = 0;
  for (Integer t = n / 3; t > 0; t /= 3) legendre += t.get_si();
  EXPECT_EQ(v.valuation, legendre);
}
