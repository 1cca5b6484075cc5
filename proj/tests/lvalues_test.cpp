#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hasse;

namespace {
constexpr double kCatalan = 0.915965594177219015054603514932384110774;
}

TEST(LValues, Examples) {
  EXPECT_NEAR(static_cast<double>(dirichlet_L(-4, 1).value), kPi / 4, 1e-12);
  EXPECT_NEAR(static_cast<double>(dirichlet_L(-4, 2).value), kCatalan, 1e-12);
  EXPECT_NEAR(static_cast<double>(dirichlet_L(5, 1).value), 2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0),
              1e-12);
  EXPECT_THROW(dirichlet_L(20, 1), ValidationError);
  EXPECT_THROW(dirichlet_L(1, 1), ValidationError);
  EXPECT_THROW(dirichlet_L(5, 3), ValidationError);
}

TEST(LValues, ZetaAtTwo) {
  EXPECT_NEAR(static_cast<double>(zeta_k_at_2(1).value), kPi * kPi / 6, 1e-15);
  EXPECT_NEAR(static_cast<double>(zeta_k_at_2(-4).value), kPi * kPi / 6 * kCatalan, 1e-12);
  EXPECT_NEAR(static_cast<double>(zeta_k_at_2(-4).value), 1.5067030099, 1e-9);
  EXPECT_NEAR(static_cast<double>(zeta_k_at_2(5).value), static_cast<double>(zeta2() * oracle::l2_even_bernoulli(5)),
              1e-12);
}

TEST(LValues, ErrorBoundsAreSmall) {
  for (i64 d : {-3, -4, 5, 8, -9995, 9997}) {
    if (!is_fundamental_discriminant(d)) continue;
    EXPECT_LT(dirichlet_L(d, 1).error, 1e-9);
    EXPECT_LT(dirichlet_L(d, 2).error, 1e-9);
  }
}

TEST(LValues, FiniteSumMatchesClassNumberFormula) {
  for (i64 a = 3; a <= 10000; ++a) {
    i64 d = -a;
    if (is_fundamental_discriminant(d))
      ASSERT_NEAR(static_cast<double>(dirichlet_L1_finite_sum(d).value),
                  static_cast<double>(dirichlet_L1_class_number(d).value), 1e-8)
          << d;
  }
}

TEST(LValues, RealFieldsMatchIndefiniteFormCycles) {
  int checked = 0;
  for (i64 d = 5; d <= 10000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    if (pell_fundamental(d).u > 20000) continue;
    ASSERT_NEAR(static_cast<double>(dirichlet_L1_finite_sum(d).value),
                static_cast<double>(oracle::l1_real_from_class_number(d)), 1e-8)
        << d;
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(LValues, SmoothedSeriesAgreesEverywhere) {
  for (i64 a = 3; a <= 10000; a += 1) {
    for (i64 d : {-a, a}) {
      if (!is_fundamental_discriminant(d)) continue;
      ASSERT_NEAR(static_cast<double>(dirichlet_L1_smoothed(d).value), static_cast<double>(dirichlet_L(d, 1).value),
                  1e-8)
          << d;
    }
  }
}

TEST(LValues, HurwitzMatchesBernoulliForEvenCharacters) {
  for (i64 d = 5; d <= 3000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    ASSERT_NEAR(static_cast<double>(dirichlet_L2_hurwitz(d).value), static_cast<double>(oracle::l2_even_bernoulli(d)),
                1e-9)
        << d;
  }
}

TEST(LValues, HurwitzMatchesDirectSeriesForOddCharacters) {
  for (i64 d : {-3, -4, -7, -8, -23, -163}) {
    long double s = 0;
    for (i64 n = 1; n <= 2000000; ++n) s += kronecker_symbol(d, static_cast<u64>(n)) / (static_cast<long double>(n) * n);
    EXPECT_NEAR(static_cast<double>(dirichlet_L2_hurwitz(d).value), static_cast<double>(s), 1e-6) << d;
  }
}
