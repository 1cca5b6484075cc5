#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hasse;

namespace {

QuaternionAlgebraQ quat(std::initializer_list<PlaceQ> places) { return QuaternionAlgebraQ(std::set<PlaceQ>(places)); }
PlaceQ inf() { return PlaceQ::infinity(); }

double log10_of(const BoundReport& r) { return static_cast<double>(r.value.log10_value()); }

bool embeds_by_places(i64 d, const QuaternionAlgebraQ& b) {
  for (auto& v : b.ramification())
    if (v.is_infinite() ? d > 0 : kronecker_symbol(d, v.p) == 1) return false;
  return true;
}

}  // namespace

TEST(Bounds, RecognizingExamples) {
  double l4 = std::log(4.0);
  double direct = std::log(64.0) + 2 * (84 / (l4 * l4 * l4) + 4);
  EXPECT_NEAR(log10_of(recognizing_bound(1, 1, 4)), direct / std::log(10.0), 1e-9);
  EXPECT_NEAR(static_cast<double>(recognizing_bound(1, 1, 4).value.top) / 4.639e32, 1, 1e-3);
  // 21x/log^3 x + x decreases on (2, 8.1), so the literal bound dips there.
  EXPECT_TRUE(less(recognizing_bound(1, 1, 5).value, recognizing_bound(1, 1, 4).value));
  EXPECT_TRUE(less(recognizing_bound(1, 1, 9).value, recognizing_bound(1, 1, 10).value));
  auto r = recognizing_bound(2, 5, 10);
  double l10 = std::log(10.0);
  double expect = 8 * std::log(64.0) + 2 * std::log(5.0) + 4 * (210 / (l10 * l10 * l10) + 10);
  EXPECT_NEAR(log10_of(r), expect / std::log(10.0), 1e-9);
  EXPECT_FALSE(r.symbolic.empty());
  EXPECT_THROW(recognizing_bound(1, 1, 2), ValidationError);
}

TEST(Bounds, ConductorAndTheta) {
  EXPECT_NEAR(static_cast<double>(grunwald_wang_conductor_bound(1, 4, 10).value.top), 5644800, 1e-6);
  double theta100 = 0;
  for (u64 p : primes_up_to(100)) theta100 += std::log(static_cast<double>(p));
  EXPECT_NEAR(log10_of(grunwald_wang_conductor_bound(1, 4, 100)),
              (std::log(32.0) + std::log(4.0) + 2 * theta100) / std::log(10.0), 1e-9);
  double l = std::log(50.0);
  EXPECT_NEAR(log10_of(theta_bound(50)), (21 * 50 / (l * l * l) + 50) / std::log(10.0), 1e-9);
  EXPECT_THROW(grunwald_wang_conductor_bound(1, 4, 2), ValidationError);
  EXPECT_THROW(theta_bound(1), ValidationError);
}

TEST(Bounds, LengthAndAreaExamples) {
  EXPECT_NEAR(static_cast<double>(chlr_length_bound(std::exp(1.0L), 3, 1, 1, 1).value.top), std::exp(1.0), 1e-12);
  auto two = chlr_length_bound(std::exp(1.0L), 2, 1, 1, 1);
  EXPECT_NEAR(std::log10(log10_of(two)), 130 / std::log(10.0) + std::log10(1 / std::log(10.0)), 1e-9);
  auto huge = chlr_length_bound(1e6, 3, 1, 1, 1);
  double lv = std::log(1e6);
  EXPECT_NEAR(std::log10(log10_of(huge)), (lv * std::log(lv) - std::log(std::log(10.0))) / std::log(10.0), 1e-9);
  auto deeper = chlr_length_bound(1e300, 2, 1, 1, 1);
  EXPECT_EQ(deeper.value.level, 2);
  double lw = std::log(1e300);
  EXPECT_NEAR(static_cast<double>(deeper.value.top), (std::log(lw) + 130 * lw - std::log(std::log(10.0))) / std::log(10.0),
              1e-6);
  EXPECT_THROW(chlr_length_bound(1, 3, 1, 1, 1), ValidationError);
  EXPECT_THROW(chlr_length_bound(5, 4, 1, 1, 1), ValidationError);

  EXPECT_EQ(mcreid_area_bound(0, 1).value.top, 1);
  EXPECT_NEAR(static_cast<double>(mcreid_area_bound(3, 2).value.top), std::exp(6.0), 1e-9);
  double lp = std::log(625.0);
  EXPECT_NEAR(static_cast<double>(brauer_rigidity_bound(1, 1, 25, 25).value.top), std::pow(2 * lp, 4) * 625, 1e-3);
  EXPECT_NEAR(static_cast<double>(brauer_rigidity_bound(1, 1, 25, 25).value.top), 1.717e7, 1e4);
  EXPECT_NEAR(static_cast<double>(brauer_rigidity_bound(4, 2, 25, 25).value.top / brauer_rigidity_bound(1, 1, 25, 25).value.top),
              256, 1e-9);
  EXPECT_THROW(brauer_rigidity_bound(0, 1, 25, 25), ValidationError);
  EXPECT_THROW(mcreid_area_bound(-1, 1), ValidationError);
}

TEST(Bounds, MonotoneOnGrids) {
  for (int n = 1; n <= 3; ++n)
    for (double d : {1.0, 5.0, 100.0}) {
      Magnitude prev{0, 0};
      for (double x = 9; x < 1e7; x *= 1.9) {
        auto r = recognizing_bound(n, d, x);
        ASSERT_TRUE(less(prev, r.value)) << n << " " << d << " " << x;
        prev = r.value;
      }
    }
  Magnitude prev{0, 0};
  for (double x = 3; x < 1e5; x *= 1.3) {
    auto r = grunwald_wang_conductor_bound(1, 4, x);
    ASSERT_FALSE(less(r.value, prev)) << x;
    prev = r.value;
  }
  for (int dim : {2, 3}) {
    Magnitude p{0, 0};
    for (double V = std::exp(1.0) + 1e-9; V < 1e12; V *= 1.7) {
      auto r = chlr_length_bound(V, dim, 1, 1, 1);
      ASSERT_TRUE(less(p, r.value)) << dim << " " << V;
      p = r.value;
    }
  }
  Magnitude m{0, 0};
  for (double V = 0.5; V < 1e6; V *= 2) {
    auto r = mcreid_area_bound(V, 1);
    ASSERT_TRUE(less(m, r.value));
    m = r.value;
  }
  for (double d1 : {2.0, 25.0, 1e4, 1e9}) {
    Magnitude b{0, 0};
    for (double d2 = 1; d2 < 1e12; d2 *= 3.1) {
      auto r = brauer_rigidity_bound(1, 1, d1, d2);
      ASSERT_TRUE(less(b, r.value));
      b = r.value;
    }
  }
}

TEST(Distinguish, Examples) {
  EXPECT_EQ(distinguish_quaternions(quat({PlaceQ{2}, inf()}), quat({PlaceQ{3}, inf()}), 100), -7);
  EXPECT_EQ(distinguish_quaternions(quat({PlaceQ{2}, PlaceQ{3}}), quat({PlaceQ{2}, inf()}), 100), 5);
  EXPECT_FALSE(distinguish_quaternions(quat({PlaceQ{2}, inf()}), quat({PlaceQ{2}, inf()}), 100).has_value());
  EXPECT_THROW(distinguish_quaternions(quat({PlaceQ{2}, inf()}), quat({PlaceQ{3}, inf()}), 6), NotFoundWithinBound);
}

TEST(Distinguish, SearchOrder) {
  auto o = search_order(12);
  EXPECT_EQ(o, (std::vector<i64>{-3, -4, 5, -7, -8, 8, -11, 12}));
  EXPECT_EQ(DiscriminantOrder(5000).order(), search_order(5000));
}

TEST(Distinguish, NoneExactlyForIsomorphicAlgebras) {
  auto algebras = quaternions_up_to(2000);
  DiscriminantOrder order(100000);
  ASSERT_EQ(algebras.size(), 29u);
  for (auto& b1 : algebras)
    for (auto& b2 : algebras) {
      auto d = distinguish_quaternions(b1, b2, order);
      ASSERT_EQ(!d.has_value(), iso(b1.as_csa(), b2.as_csa()));
      if (!d) continue;
      ASSERT_NE(embeds(QuadraticField(*d), b1), embeds(QuadraticField(*d), b2));
      for (i64 e : order.order()) {
        if (e == *d) break;
        ASSERT_EQ(embeds_by_places(e, b1), embeds_by_places(e, b2));
      }
    }
}

TEST(BrauerPairs, Examples) {
  auto L1 = make_field(-3), L2 = make_field(-51);
  auto bl1 = parse_quaternion_l(L1, ""), bl2 = parse_quaternion_l(L2, "");
  auto r = distinguish_brauer_pairs(bl1, bl2, 1000000);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->omega1, 5u);
  EXPECT_EQ(kronecker_symbol(-3, 5), -1);
  EXPECT_EQ(kronecker_symbol(-51, 5), 1);
  EXPECT_TRUE(r->recipe.ramification().count(PlaceQ{5}));
  EXPECT_TRUE(restriction_xor(r->recipe, L1, bl1, L2, bl2));
  EXPECT_TRUE(restriction_xor(r->algebra, L1, bl1, L2, bl2));
  EXPECT_FALSE(r->algebra.is_definite());
  EXPECT_FALSE(distinguish_brauer_pairs(bl1, bl1, 1000).has_value());
  EXPECT_THROW(distinguish_brauer_pairs(parse_quaternion_l(L1, "2,5"), bl2, 1000), ValidationError);
}

TEST(BrauerPairs, LeastSeparatingAlgebra) {
  auto L = make_field(-4);
  std::vector<QuaternionAlgebraL> pool;
  for (const char* text : {"", "5.1,5.2", "13.1,13.2", "5.1,5.2,13.1,13.2"}) pool.push_back(parse_quaternion_l(L, text));
  for (i64 d : {-3, -7, -8, -11}) pool.push_back(parse_quaternion_l(make_field(d), ""));
  auto candidates = quaternions_up_to(1000000);
  for (auto& a : pool)
    for (auto& b : pool) {
      auto r = distinguish_brauer_pairs(a, b, 1000000);
      if (a.base() == b.base() && a.ramification() == b.ramification()) {
        EXPECT_FALSE(r.has_value());
        continue;
      }
      ASSERT_TRUE(r.has_value());
      ASSERT_TRUE(restriction_xor(r->algebra, a.base(), a, b.base(), b));
      for (auto& c : candidates) {
        if (c.is_definite()) continue;
        if (!(c < r->algebra)) break;
        ASSERT_FALSE(restriction_xor(c, a.base(), a, b.base(), b)) << format_ramification(c);
      }
    }
}

TEST(LimitPairs, Examples) {
  auto p3 = limit_pair(3);
  EXPECT_EQ(p3.delta1, -3);
  EXPECT_EQ(p3.delta2, -51);
  EXPECT_EQ(p3.p1, 7u);
  auto p2 = limit_pair(2);
  EXPECT_TRUE(std::make_pair(-p2.delta1, -p2.delta2) < std::make_pair(-p3.delta1, -p3.delta2));
  EXPECT_THROW(limit_pair(1), ValidationError);
}

TEST(LimitPairs, AgreeUpToBoundAndWitnessesReplay) {
  for (u64 m = 2; m <= 13; ++m) {
    auto lp = limit_pair(m);
    ASSERT_NE(lp.delta1, lp.delta2);
    ASSERT_LT(lp.delta1, 0);
    ASSERT_LT(lp.delta2, 0);
    for (u64 p : primes_up_to(m))
      ASSERT_EQ(splitting(QuadraticField(lp.delta1), PlaceQ{p}), splitting(QuadraticField(lp.delta2), PlaceQ{p}));
    ASSERT_EQ(kronecker_symbol(lp.delta1, lp.p1), 1);
    ASSERT_EQ(kronecker_symbol(lp.delta2, lp.p1), -1);
    ASSERT_EQ(kronecker_symbol(lp.delta1, lp.p2), 1);
    ASSERT_EQ(kronecker_symbol(lp.delta2, lp.p2), -1);
    ASSERT_GT(lp.p1, m);
    ASSERT_LT(lp.p1, lp.p2);
  }
}

TEST(Families, Examples) {
  auto fam = length_preserving_family(quat({PlaceQ{2}, PlaceQ{3}}), {5}, 2);
  ASSERT_EQ(fam.size(), 2u);
  EXPECT_EQ(format_ramification(fam[0]), "2,3,7,13");
  EXPECT_EQ(format_ramification(fam[1]), "2,3,7,17");
  EXPECT_THROW(length_preserving_family(quat({PlaceQ{2}, inf()}), {5}, 2), ValidationError);
  EXPECT_THROW(length_preserving_family(QuaternionAlgebraQ(), {5, 8, 40}, 2), ValidationError);
}

TEST(Families, MembersAdmitFieldsAndAreDistinct) {
  auto b = quat({PlaceQ{2}, PlaceQ{3}});
  for (std::vector<i64> deltas : {std::vector<i64>{5}, {5, 8}, {29}}) {
    if (!embeds(QuadraticField(deltas[0]), b)) continue;
    auto fam = length_preserving_family(b, deltas, 10);
    ASSERT_EQ(fam.size(), 10u);
    std::set<QuaternionAlgebraQ> unique(fam.begin(), fam.end());
    EXPECT_EQ(unique.size(), fam.size());
    for (auto& bj : fam) {
      for (auto& v : b.ramification()) EXPECT_TRUE(bj.ramification().count(v));
      EXPECT_GT(bj.ramification().size(), b.ramification().size());
      for (i64 d : deltas) EXPECT_TRUE(embeds(QuadraticField(d), bj));
    }
  }
}

TEST(Scan, SmallExample) {
  auto rep = rigidity_scan(16, 100);
  ASSERT_EQ(rep.algebras.size(), 3u);
  EXPECT_EQ(rep.pairs.size(), 3u);
  EXPECT_EQ(rep.max_minimal_delta, 7u);
  EXPECT_LE(rep.max_minimal_delta, 8u);
  EXPECT_EQ(rep.histogram[5], 2u);
  EXPECT_EQ(rep.histogram[7], 1u);
  EXPECT_THROW(rigidity_scan(3, 100), ValidationError);
}

TEST(Scan, WorkersGiveIdenticalReports) {
  auto a = rigidity_scan(4000, 100000, false, 1);
  auto b = rigidity_scan(4000, 100000, false, 4);
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) ASSERT_EQ(a.pairs[i].minimal_delta, b.pairs[i].minimal_delta);
  EXPECT_EQ(a.histogram, b.histogram);
  for (auto& pr : a.pairs)
    ASSERT_NE(embeds(QuadraticField(pr.minimal_delta), pr.b1), embeds(QuadraticField(pr.minimal_delta), pr.b2));
  auto ntc = rigidity_scan(4000, 100000, true, 2);
  for (auto& pr : ntc.pairs)
    if (!pr.b1.is_definite() && !pr.b2.is_definite()) ASSERT_GT(pr.minimal_delta, 0);
}
