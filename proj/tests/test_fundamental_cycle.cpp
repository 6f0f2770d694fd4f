#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "surfsing/catalog.hpp"
#include "surfsing/fundamental_cycle.hpp"
#include "surfsing/sweeps.hpp"

using namespace surfsing;

namespace {

ResolutionGraph d4() { return ResolutionGraph({-2, -2, -2, -2}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, true); }

ResolutionGraph chain_of(std::vector<std::int64_t> w) { return ResolutionGraph::chain(w); }

}  // namespace

TEST(Laufer, Examples) {
  for (std::size_t len = 1; len <= 12; ++len)
    EXPECT_EQ(laufer_fundamental_cycle(chain_of(std::vector<std::int64_t>(len, -2))),
              Cycle(std::vector<std::int64_t>(len, 1)));
  EXPECT_EQ(laufer_fundamental_cycle(icosahedral_graph(1).graph), (Cycle{2, 4, 6, 5, 4, 3, 2, 3}));
  for (std::int64_t b = 2; b <= 9; ++b) EXPECT_EQ(laufer_fundamental_cycle(ResolutionGraph({-b}, {}, true)), Cycle{1});
}

TEST(Laufer, RejectsBadInput) {
  auto code_of = [](const ResolutionGraph& g) {
    try {
      laufer_fundamental_cycle(g);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InternalError;
  };
  EXPECT_EQ(code_of(ResolutionGraph({-2, -2}, {{0, 1, 2}}, false)), Errc::NotNegativeDefinite);
  EXPECT_EQ(code_of(ResolutionGraph({-2, -2}, {}, true)), Errc::InvalidGraph);
  EXPECT_EQ(code_of(ResolutionGraph()), Errc::InvalidGraph);
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_fundamental_cycle(d4(), 6), (Cycle{2, 1, 1, 1}));
  EXPECT_EQ(brute_force_fundamental_cycle(ResolutionGraph({-2}, {}, true), 1), Cycle{1});
  EXPECT_EQ(brute_force_fundamental_cycle(tetrahedral_graph(3).graph, 6), (Cycle{1, 2, 2, 1, 1}));
  try {
    brute_force_fundamental_cycle(icosahedral_graph(1).graph, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BoundTooSmall);
  }
}

// The pruned search against plain enumeration of the whole box.
TEST(BruteForce, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = sweeps::random_negative_definite_tree(rng, 5, -4);
    const auto exhaustive = oracle::exhaustive_fundamental_cycle(g, 4);
    ASSERT_TRUE(exhaustive.has_value());
    EXPECT_EQ(brute_force_fundamental_cycle(g, 4), *exhaustive);
    EXPECT_EQ(laufer_fundamental_cycle(g), *exhaustive);
  }
  ResolutionGraph multi({-3, -3}, {{0, 1, 2}}, false);
  EXPECT_EQ(brute_force_fundamental_cycle(multi, 4), *oracle::exhaustive_fundamental_cycle(multi, 4));
  EXPECT_EQ(laufer_fundamental_cycle(multi), *oracle::exhaustive_fundamental_cycle(multi, 4));
}

TEST(IsAntinef, Examples) {
  const std::vector<std::int64_t> two{-2, -2}, three{-2, -2, -2};
  EXPECT_TRUE(is_antinef(ResolutionGraph::chain(two), Cycle{1, 1}));
  EXPECT_FALSE(is_antinef(ResolutionGraph::chain(three), Cycle{0, 1, 0}));
  for (const auto& e : sweeps::enumerate_catalog({30, 3}))
    EXPECT_TRUE(is_antinef(e.graph, laufer_fundamental_cycle(e.graph))) << e.label();
}

TEST(Monotonicity, Examples) {
  EXPECT_TRUE(check_monotonicity(chain_of({-2, -2}), chain_of({-3, -2})));
  EXPECT_TRUE(check_monotonicity(d4(), d4()));
  const auto e8 = icosahedral_graph(1).graph;
  const auto e8_minus3 = e8.with_weights(std::vector<std::int64_t>(8, -3));
  EXPECT_TRUE(check_monotonicity(e8, e8_minus3));
  EXPECT_GT(laufer_fundamental_cycle(e8)[2], laufer_fundamental_cycle(e8_minus3)[2]);
  try {
    check_monotonicity(chain_of({-3, -2}), chain_of({-2, -2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreconditionViolated);
  }
  EXPECT_THROW(check_monotonicity(chain_of({-2}), chain_of({-2, -2})), Error);
}

TEST(SixE, Examples) {
  const auto i1 = check_6E(icosahedral_graph(1).graph);
  EXPECT_EQ(i1.max_coefficient, 6);
  EXPECT_TRUE(i1.passes);
  for (std::int64_t n = 2; n <= 40; ++n)
    for (std::int64_t q = 1; q < n; ++q)
      if (std::gcd(n, q) == 1) {
        EXPECT_EQ(check_6E(cyclic_graph(n, q)).max_coefficient, 1);
      }
  for (std::int64_t r = 1; r <= 10; ++r) EXPECT_EQ(check_6E(b2_member(Family::Dihedral, r).graph).max_coefficient, 2);
}

TEST(Policies, AllAgreeOnSmallCatalog) {
  const auto catalog = sweeps::small_catalog({25, 3}, 8);
  ASSERT_FALSE(catalog.empty());
  for (const auto& e : catalog) {
    const auto ref = laufer_fundamental_cycle(e.graph);
    EXPECT_EQ(laufer_fundamental_cycle(e.graph, highest_index_policy()), ref);
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_EQ(laufer_fundamental_cycle(e.graph, random_policy(s)), ref);
  }
}

TEST(Policies, IterationCountMatchesCycleSize) {
  for (const auto& e : sweeps::enumerate_catalog({30, 4})) {
    const auto run = laufer_run(e.graph, random_policy(3));
    EXPECT_EQ(run.additions + 1, static_cast<std::size_t>(run.cycle.sum()));
  }
}

TEST(Policies, BadPolicyIsReported) {
  const TieBreakPolicy rogue = [](std::span<const std::size_t>) { return std::size_t{99}; };
  EXPECT_THROW(laufer_fundamental_cycle(d4(), rogue), Error);
}
