#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hasse;

namespace {

constexpr double kCatalan = 0.915965594177219015054603514932384110774;

QuaternionAlgebraQ quat(std::initializer_list<PlaceQ> places) { return QuaternionAlgebraQ(std::set<PlaceQ>(places)); }

QuaternionAlgebraQ from_primes(std::vector<u64> ps) { return quaternion_from_primes(ps); }

}  // namespace

TEST(Lengths, Examples) {
  EXPECT_NEAR(static_cast<double>(length_from_trace(Real(3))), 1.924847300238413, 1e-12);
  EXPECT_NEAR(static_cast<double>(length_from_trace(BigInt(3))), 1.924847300238413, 1e-12);
  EXPECT_NEAR(static_cast<double>(length_from_trace(Real(-3))), 1.924847300238413, 1e-12);
  EXPECT_THROW(length_from_trace(Real(2)), ValidationError);
  EXPECT_THROW(length_from_trace(BigInt(-2)), ValidationError);
  EXPECT_NEAR(static_cast<double>(length_from_trace(trace_from_length(1))), 1, 1e-12);
  for (double l = 0.1; l < 40; l *= 1.7)
    EXPECT_NEAR(static_cast<double>(length_from_trace(trace_from_length(l))), l, 1e-12 * std::max(1.0, l));
}

TEST(Geodesics, FromFieldExamples) {
  auto g5 = geodesic_from_field(5);
  EXPECT_EQ(g5.trace, 3);
  EXPECT_NEAR(static_cast<double>(g5.length), 2 * std::log((3 + std::sqrt(5.0)) / 2), 1e-12);
  auto g8 = geodesic_from_field(8);
  EXPECT_EQ(g8.trace, 6);
  EXPECT_NEAR(static_cast<double>(g8.length), 3.525494348078172, 1e-9);
  auto g12 = geodesic_from_field(12);
  EXPECT_EQ(g12.trace, 4);
  EXPECT_NEAR(static_cast<double>(g12.length), 2.633915793849634, 1e-9);
  EXPECT_THROW(geodesic_from_field(-4), ValidationError);
}

TEST(Geodesics, TwoLengthDerivationsAgree) {
  for (i64 d = 5; d <= 10000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    auto g = geodesic_from_field(d);
    ASSERT_GT(g.length, 0);
    WideFloat eig = (WideFloat(g.trace) + WideFloat(g.u) * boost::multiprecision::sqrt(WideFloat(d))) / 2;
    Real via_unit = static_cast<Real>(2 * boost::multiprecision::log(eig));
    ASSERT_NEAR(static_cast<double>(g.length), static_cast<double>(via_unit), 1e-9) << d;
    auto s = pell_fundamental(d);
    Real eps0 = static_cast<Real>(unit_log(s.t, s.u, d));
    ASSERT_NEAR(static_cast<double>(g.paper_unit_length), static_cast<double>(4 * eps0), 1e-9) << d;
    ASSERT_NEAR(static_cast<double>(g.length), static_cast<double>(s.norm == 1 ? 2 * eps0 : 4 * eps0), 1e-9) << d;
  }
}

TEST(Geodesics, RationalClasses) {
  auto g5 = geodesic_from_field(5), g8 = geodesic_from_field(8);
  EXPECT_EQ(rational_classes({g5, g8}).size(), 2u);
  auto g5c = geodesic_power(g5, 3);
  EXPECT_EQ(rational_classes({g5, g5c}).size(), 1u);
  EXPECT_EQ(length_ratio(g5c, g5), Fraction(3));
  EXPECT_NEAR(static_cast<double>(g5c.length / g5.length), 3, 1e-12);
  EXPECT_EQ(g5c.trace, 18);
  EXPECT_TRUE(rational_classes({}).empty());
  EXPECT_THROW(length_ratio(g5, g8), ValidationError);
}

TEST(Geodesics, CensusMatchesScan) {
  auto b = quat({PlaceQ{2}, PlaceQ{3}});
  auto c = geodesic_census(b, 40);
  std::vector<i64> expect;
  for (i64 d = 5; d <= 40; ++d)
    if (is_fundamental_discriminant(d) && kronecker_symbol(d, 2) != 1 && kronecker_symbol(d, 3) != 1) expect.push_back(d);
  ASSERT_EQ(c.count, expect.size());
  EXPECT_EQ(c.data[0].delta, 5);
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(c.data[i].delta, expect[i]);
  EXPECT_EQ(c.classes, c.count);
  EXPECT_EQ(c.length_bound, 80);
  EXPECT_GT(c.max_length, 0);

  u64 real_count = 0;
  for (i64 d = 5; d <= 3000; ++d) real_count += is_fundamental_discriminant(d);
  EXPECT_EQ(geodesic_census(QuaternionAlgebraQ(), 3000).count, real_count);
  EXPECT_THROW(geodesic_census(quat({PlaceQ{2}, PlaceQ::infinity()}), 100), ValidationError);
}

TEST(Volumes, CoareaExamples) {
  auto c = coarea_maximal_order(quat({PlaceQ{2}, PlaceQ{3}}));
  EXPECT_NEAR(static_cast<double>(c.value), 2 * kPi * kPi / 3, 1e-12);
  EXPECT_NEAR(static_cast<double>(c.bound), 2 * kPi * kPi * 36, 1e-9);
  EXPECT_NEAR(static_cast<double>(coarea_maximal_order(QuaternionAlgebraQ()).value), kPi * kPi / 3, 1e-12);
  EXPECT_THROW(coarea_maximal_order(quat({PlaceQ{2}, PlaceQ::infinity()})), ValidationError);
}

TEST(Volumes, CoareaBelowDiscriminantBound) {
  for (u64 n = 1; n <= 1000; ++n) {
    if (!is_squarefree(n)) continue;
    auto f = factorize(n);
    if (f.size() % 2) continue;
    std::vector<u64> ps;
    for (auto [p, e] : f) ps.push_back(p);
    auto c = coarea_maximal_order(from_primes(ps));
    ASSERT_LE(c.value, c.bound) << n;
  }
}

TEST(Volumes, KleinianExamples) {
  auto L = make_field(-4);
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, "5.1,5.2"))), 16 * kCatalan / 3, 1e-10);
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, "5.1,5.2"))), 4.88515, 1e-5);
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, ""))), kCatalan / 3, 1e-12);
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, ""))), 0.305321, 1e-6);
  Real base = covolume_kleinian(parse_quaternion_l(L, ""));
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, "13.1,13.2")) / base), 144, 1e-9);
  EXPECT_NEAR(static_cast<double>(covolume_kleinian(parse_quaternion_l(L, "3,7")) / base), 8 * 48, 1e-9);
  EXPECT_THROW(covolume_kleinian(parse_quaternion_l(make_field(5), "")), ValidationError);
}

TEST(Volumes, ChinburgFriedmanExamples) {
  Real z = zeta_k_at_2(-4).value;
  Real v = minimal_covolume_CF(4, 2, z, {5, 5}, 1);
  EXPECT_NEAR(static_cast<double>(v), static_cast<double>(2 * kPi * kPi * z * 8 * 4 / std::pow(4 * kPi * kPi, 2)), 1e-12);
  EXPECT_NEAR(static_cast<double>(minimal_covolume_CF(4, 2, z, {}, 1)),
              static_cast<double>(2 * kPi * kPi * z * 8 / std::pow(4 * kPi * kPi, 2)), 1e-12);
  EXPECT_NEAR(static_cast<double>(minimal_covolume_CF(4, 2, z, {5, 5}, 2)), static_cast<double>(v / 2), 1e-12);
  EXPECT_THROW(minimal_covolume_CF(4, 2, z, {}, 0.5), ValidationError);
}

TEST(Volumes, DiscriminantBounds) {
  EXPECT_NEAR(static_cast<double>(disc_bound_from_volume(1, 3).log10_value()), 57, 1e-12);
  EXPECT_NEAR(static_cast<double>(disc_bound_from_volume(1, 2).log10_value()), 930, 1e-12);
  EXPECT_NEAR(static_cast<double>(disc_bound_from_volume(10, 3).log10_value()), 64, 1e-12);
  EXPECT_THROW(disc_bound_from_volume(0, 3), ValidationError);
  EXPECT_THROW(disc_bound_from_volume(1, 4), ValidationError);
}

TEST(Censuses, FuchsianClasses) {
  EXPECT_GE(class_census_fuchsian(kPi * kPi / 3).count, 1u);
  EXPECT_EQ(class_census_fuchsian(kPi * kPi / 3 * (1 - 1e-6)).count, 0u);
  auto c = class_census_fuchsian(2 * kPi * kPi / 3);
  EXPECT_NE(std::find(c.classes.begin(), c.classes.end(), commensurability_class(quat({PlaceQ{2}, PlaceQ{3}}))),
            c.classes.end());
  auto big = class_census_fuchsian(500);
  std::set<CommensurabilityClass> unique(big.classes.begin(), big.classes.end());
  EXPECT_EQ(unique.size(), big.classes.size());
  u64 expect = 0;
  for (u64 n = 1; n <= 200000; ++n) {
    if (!is_squarefree(n)) continue;
    auto f = factorize(n);
    if (f.size() % 2) continue;
    std::vector<u64> ps;
    for (auto [p, e] : f) ps.push_back(p);
    if (coarea_maximal_order(from_primes(ps)).value <= 500) ++expect;
  }
  EXPECT_EQ(big.count, expect);
  EXPECT_THROW(class_census_fuchsian(0), ValidationError);
}

TEST(Censuses, ClassesAreAnEquivalence) {
  auto a = commensurability_class(quat({PlaceQ{2}, PlaceQ{3}}));
  auto b = commensurability_class(quat({PlaceQ{3}, PlaceQ{2}}));
  auto c = commensurability_class(quat({PlaceQ{2}, PlaceQ{5}}));
  EXPECT_EQ(a, a);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, a);
  EXPECT_NE(a, c);
}

TEST(Censuses, WithLengths) {
  auto five = class_census_with_lengths({5}, 10);
  for (auto& b : five) {
    EXPECT_FALSE(b.finite_primes().empty());
    EXPECT_TRUE(embeds(make_field(5), b));
    EXPECT_LE(coarea_maximal_order(b).value, 10);
  }
  std::size_t prev_count = 0;
  for (Real V : {5.0L, 20.0L, 80.0L, 320.0L, 1280.0L}) {
    std::size_t n = class_census_with_lengths({5}, V).size();
    EXPECT_GE(n, prev_count);
    prev_count = n;
  }
  EXPECT_EQ(class_census_with_lengths({}, 300).size() + 1, class_census_fuchsian(300).count);
  EXPECT_THROW(class_census_with_lengths({-4}, 10), ValidationError);
  EXPECT_THROW(class_census_with_lengths({5, 5}, 10), ValidationError);
}

TEST(Censuses, SurfaceExamples) {
  auto L = make_field(-4);
  auto bl = parse_quaternion_l(L, "5.1,5.2");
  auto s = surface_census(bl, 10000, 1, 1);
  ASSERT_GE(s.size(), 4u);
  EXPECT_EQ(format_ramification(s[0].b0), "2,5");
  EXPECT_EQ(format_ramification(s[1].b0), "3,5");
  EXPECT_EQ(format_ramification(s[2].b0), "5,7");
  EXPECT_EQ(format_ramification(s[3].b0), "5,11");
  for (auto& e : s) {
    EXPECT_TRUE(is_restriction(e.b0, L, bl));
    EXPECT_TRUE(restrict(e.b0, L).ramification() == bl.ramification());
    EXPECT_FALSE(e.b0.is_definite());
    EXPECT_NEAR(static_cast<double>(e.area), static_cast<double>(coarea_maximal_order(e.b0).value), 1e-12);
    EXPECT_NEAR(static_cast<double>(e.ggs_area_bound),
                static_cast<double>(2 * kPi * kPi * e.b0.discriminant().convert_to<long double>() * std::exp(1.0L)),
                1e-6);
  }
  EXPECT_TRUE(surface_census(parse_quaternion_l(L, "3,5.1"), 10000, 1, 1).empty());
  EXPECT_THROW(surface_census(parse_quaternion_l(make_field(5), ""), 100, 1, 1), ValidationError);
}

TEST(Censuses, SurfaceCountMatchesRestriction) {
  auto L = make_field(-4);
  for (const char* text : {"5.1,5.2", "", "5.1,5.2,13.1,13.2", "3,13.1,13.2,7"}) {
    auto bl = parse_quaternion_l(L, text);
    for (u64 x : {100ull, 10000ull, 1000000ull}) {
      auto s = surface_census(bl, x, 1, 1);
      EXPECT_EQ(s.size(), surface_count_by_restriction(bl, x)) << text << " " << x;
    }
  }
  auto bl = parse_quaternion_l(make_field(-7), "2.1,2.2");
  EXPECT_EQ(surface_census(bl, 1000000, 1, 1).size(), surface_count_by_restriction(bl, 1000000));
}

TEST(Censuses, SurfacePredictionShape) {
  auto bl = parse_quaternion_l(make_field(-4), "5.1,5.2");
  u64 x = 100000000;
  auto count = surface_census(bl, x, 1, 1).size();
  EXPECT_EQ(count, surface_count_by_restriction(bl, x));
  Real ratio = static_cast<Real>(count) / surface_prediction(bl, x);
  EXPECT_GE(ratio, 0.6) << static_cast<double>(ratio);
  EXPECT_LE(ratio, 1.4) << static_cast<double>(ratio);
}
