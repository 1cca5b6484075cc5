#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hasse;

TEST(Pell, Examples) {
  auto s5 = pell_fundamental(5);
  EXPECT_EQ(s5.t, 1);
  EXPECT_EQ(s5.u, 1);
  EXPECT_EQ(s5.norm, -1);
  EXPECT_EQ(s5.t1, 3);
  EXPECT_EQ(s5.u1, 1);

  auto s8 = pell_fundamental(8);
  EXPECT_EQ(s8.t, 2);
  EXPECT_EQ(s8.u, 1);
  EXPECT_EQ(s8.norm, -1);
  EXPECT_EQ(s8.t1, 6);
  EXPECT_EQ(s8.u1, 2);

  auto s12 = pell_fundamental(12);
  EXPECT_EQ(s12.t1, 4);
  EXPECT_EQ(s12.u1, 1);
  EXPECT_EQ(s12.norm, 1);
}

TEST(Pell, RejectsBadDiscriminants) {
  EXPECT_THROW(pell_fundamental(12 * 4), ValidationError);
  EXPECT_THROW(pell_fundamental(-4), ValidationError);
  EXPECT_THROW(pell_fundamental(1), ValidationError);
}

TEST(Pell, MatchesBruteForceUpTo10k) {
  int compared = 0, total = 0;
  for (i64 d = 5; d <= 10000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    auto s = pell_fundamental(d);
    ASSERT_EQ(s.t1 * s.t1 - d * s.u1 * s.u1, 4) << d;
    ASSERT_EQ(s.t * s.t - d * s.u * s.u, 4 * s.norm) << d;
    ++total;
    if (s.u1 > 20000) continue;
    ++compared;
    auto any = oracle::brute_pell(d, false);
    ASSERT_EQ(s.u, any.u) << d;
    ASSERT_EQ(s.t, any.t) << d;
    ASSERT_EQ(s.norm, any.norm) << d;
    auto one = oracle::brute_pell(d, true);
    ASSERT_EQ(s.u1, one.u) << d;
    ASSERT_EQ(s.t1, one.t) << d;
  }
  EXPECT_GT(compared, total / 10);
}

TEST(Pell, NormOnePairIsSquareWhenNormMinusOne) {
  for (i64 d : {5, 13, 29, 41, 53, 8, 40, 61, 109}) {
    auto s = pell_fundamental(d);
    if (s.norm == 1) {
      EXPECT_EQ(s.t1, s.t);
      EXPECT_EQ(s.u1, s.u);
    } else {
      EXPECT_EQ(s.t1, (s.t * s.t + d * s.u * s.u) / 2);
      EXPECT_EQ(s.u1, s.t * s.u);
    }
  }
}

TEST(Pell, LargeDiscriminantsAreExactAndFast) {
  for (i64 d = 9999000; d <= 10000000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    auto s = pell_fundamental(d);
    ASSERT_EQ(s.t1 * s.t1 - BigInt(d) * s.u1 * s.u1, 4) << d;
  }
}
