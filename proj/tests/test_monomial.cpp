#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "surfsing/monomial.hpp"

using namespace surfsing;

TEST(WeightedOrder, Examples) {
  for (std::int64_t m = 1; m <= 10; ++m)
    EXPECT_EQ(weighted_order({m + 1, m}, std::vector<Lattice2>{{m, 0}, {0, m + 1}}), m * (m + 1));
  EXPECT_EQ(weighted_order({1, 1}, std::vector<Lattice2>{{2, 0}, {0, 3}}), 2);
  EXPECT_EQ(weighted_order({3, 2}, std::vector<Lattice2>{{2, 0}, {0, 3}}), 6);
  MonomialBoundary mb(Rational(1), {{1, 0}});
  EXPECT_THROW(weighted_order({0, 1}, mb), Error);
}

TEST(MonomialBoundary, Normalizes) {
  MonomialBoundary mb(Rational(1, 2), {{0, 3}, {2, 0}, {0, 3}});
  EXPECT_EQ(mb.exponents(), (std::vector<Lattice2>{{0, 3}, {2, 0}}));
  EXPECT_THROW(MonomialBoundary(Rational(1), {}), Error);
  EXPECT_THROW(MonomialBoundary(Rational(1), {{-1, 2}}), Error);
  EXPECT_THROW(MonomialBoundary(Rational(-1), {{1, 2}}), Error);
}

TEST(MonomialMld, Examples) {
  EXPECT_EQ(monomial_mld(MonomialBoundary(Rational(3, 4), {{2, 0}, {0, 3}})).mld, Rational(1, 2));
  EXPECT_EQ(monomial_mld(MonomialBoundary(Rational(0), {{2, 0}, {0, 3}})).mld, Rational(2));
  EXPECT_EQ(monomial_mld(MonomialBoundary(Rational(5, 9), {{3, 0}, {0, 4}})).mld, Rational(1, 3));
  // A smooth curve with coefficient 1: lc, not klt, infimum 1 reached at (1,1).
  EXPECT_EQ(monomial_mld(MonomialBoundary(Rational(1), {{1, 0}})).mld, Rational(1));
  // (x^2 + y^3) with coefficient 1 exceeds its lct 5/6.
  EXPECT_FALSE(monomial_mld(MonomialBoundary(Rational(1), {{2, 0}, {0, 3}})).mld.has_value());
  // At the lct itself the infimum is 0 on the ray (3,2).
  const auto at_lct = monomial_mld(MonomialBoundary(Rational(5, 6), {{2, 0}, {0, 3}}));
  EXPECT_EQ(at_lct.mld, Rational(0));
  EXPECT_EQ(at_lct.minimizer, (Lattice2{3, 2}));
}

// g is minimized exactly; the box minimum over [1,40]^2 is an upper bound and
// equals it whenever the reported minimizer lies in the box.
TEST(MonomialMld, AgreesWithBoxSearch) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> coord(0, 6), num(0, 12), den(1, 12), count(1, 4);
  int lc_cases = 0, not_lc_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Lattice2> es;
    const auto k = count(rng);
    for (std::int64_t i = 0; i < k; ++i) es.push_back({coord(rng), coord(rng)});
    MonomialBoundary mb(Rational(num(rng), den(rng)), es);
    const auto exact = monomial_mld(mb);
    const auto [box, arg] = oracle::box_minimum(mb, 40);
    if (!exact.mld) {
      ++not_lc_cases;
      // Some lattice multiple goes negative and keeps decreasing.
      EXPECT_LT(box, Rational(0));
      const auto [box2, arg2] = oracle::box_minimum(mb, 80);
      EXPECT_LT(box2, box);
      continue;
    }
    ++lc_cases;
    EXPECT_GE(exact.mld->sign(), 0);
    EXPECT_LE(*exact.mld, box);
    ASSERT_TRUE(exact.minimizer.has_value());
    EXPECT_EQ(weighted_log_discrepancy(*exact.minimizer, mb), *exact.mld);
    if (exact.minimizer->x <= 40 && exact.minimizer->y <= 40) {
      EXPECT_EQ(*exact.mld, box);
    }
  }
  EXPECT_GT(lc_cases, 50);
  EXPECT_GT(not_lc_cases, 20);
}

TEST(MonomialLct, Examples) {
  EXPECT_EQ(monomial_lct({{2, 0}, {0, 3}}), Rational(5, 6));
  EXPECT_EQ(monomial_lct({{1, 0}}), Rational(1));
  EXPECT_EQ(monomial_lct({{4, 0}, {0, 5}}), Rational(9, 20));
  for (std::int64_t m = 1; m <= 12; ++m)
    EXPECT_EQ(monomial_lct({{m, 0}, {0, m + 1}}), Rational(1, m) + Rational(1, m + 1));
  try {
    monomial_lct({{0, 0}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateIdeal);
  }
}

TEST(MonomialLct, AgreesWithWeightSearch) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> coord(0, 7), count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Lattice2> es;
    const auto k = count(rng);
    for (std::int64_t i = 0; i < k; ++i) {
      Lattice2 e{coord(rng), coord(rng)};
      if (e == Lattice2{0, 0}) e.x = 1;
      es.push_back(e);
    }
    EXPECT_EQ(monomial_lct(es), oracle::lct_by_weights(es, 50));
  }
}

TEST(Sharpness, Examples) {
  const auto m3 = example_sharpness_check(3);
  EXPECT_EQ(m3.lambda, Rational(5, 9));
  EXPECT_EQ(m3.mld, Rational(1, 3));
  EXPECT_EQ(m3.a_E, Rational(7) - Rational(5, 9) * Rational(12));
  EXPECT_EQ(m3.non_lc_bound, Rational(1, 9));
  EXPECT_TRUE(m3.order_bound_ok);

  const auto m1 = example_sharpness_check(1);
  EXPECT_EQ(m1.mld, Rational(1));
  EXPECT_EQ(m1.a_E, Rational(1));
  EXPECT_EQ(m1.non_lc_bound, Rational(1));

  const auto m2 = example_sharpness_check(2);
  EXPECT_EQ(m2.mld, Rational(1, 2));
  EXPECT_EQ(m2.non_lc_bound, Rational(1, 4));
  EXPECT_THROW(example_sharpness_check(0), Error);
}

// Adding t*H for a curve H through z with vanishing order m along E drops
// a_E by t*m; beyond 1/m^2 it is negative.
TEST(Sharpness, BoundIsWhereTheExampleStopsBeingLc) {
  for (std::int64_t m = 1; m <= 20; ++m) {
    const auto r = example_sharpness_check(m);
    ASSERT_TRUE(r.order_bound_ok) << m;
    const Rational t = r.non_lc_bound;
    EXPECT_EQ(r.a_E - t * Rational(r.min_vanishing_order), Rational(0));
    EXPECT_LT(r.a_E - (t + Rational(1, 1000 * m * m)) * Rational(r.min_vanishing_order), Rational(0));
  }
}
