#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tollbooth/errors.hpp"
#include "tollbooth/oracle.hpp"
#include "tollbooth/single_source.hpp"

namespace tollbooth {
namespace {

using testing::path_tree;
using testing::random_tree;

SingleSourceInstance random_single_source(std::uint64_t seed, int max_edges, int max_customers) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  SingleSourceInstance inst;
  inst.tree = random_tree(pick(1, max_edges), seed);
  inst.root = pick(0, inst.tree.vertex_count() - 1);
  const int n = pick(0, max_customers);
  for (int i = 0; i < n; ++i) {
    Vertex t = pick(0, inst.tree.vertex_count() - 2);
    if (t >= inst.root) ++t;
    inst.customers.push_back({t, pick(1, 10)});
  }
  return inst;
}

TEST(SingleSourceTest, OneEdgeTwoBudgets) {
  const SingleSourceInstance inst{path_tree(1), 0, {{1, 3}, {1, 5}}};
  const SingleSourceResult r = solve_single_source(inst);
  EXPECT_EQ(r.revenue, 6);
  EXPECT_EQ(r.scheme.price(0), 3);
  EXPECT_TRUE(r.prefix_budget_property);
}

TEST(SingleSourceTest, TwoEdgePath) {
  const SingleSourceInstance inst{path_tree(2), 0, {{1, 4}, {2, 6}}};
  const SingleSourceResult r = solve_single_source(inst);
  EXPECT_EQ(r.revenue, 10);
  EXPECT_EQ(r.scheme.price(0), 4);
  EXPECT_EQ(r.scheme.price(1), 2);
  EXPECT_TRUE(has_prefix_budget_property(inst, r.scheme));
  EXPECT_EQ(cumulative_prices(inst, r.scheme), (std::vector<Rational>{0, 4, 6}));
}

TEST(SingleSourceTest, NoCustomers) {
  const SingleSourceInstance inst{path_tree(3), 1, {}};
  const SingleSourceResult r = solve_single_source(inst);
  EXPECT_EQ(r.revenue, 0);
  EXPECT_EQ(r.scheme, PricingScheme(3));
}

TEST(SingleSourceTest, RejectsRootTarget) {
  const SingleSourceInstance inst{path_tree(2), 1, {{1, 4}}};
  EXPECT_THROW(solve_single_source(inst), ValidationError);
}

// r - v - w with one buyer at v (budget 10) and five at w (budget 6). The only
// optimum sets cumulative price 6 at v, which is not a budget of anyone whose
// target lies on the root-to-v path.
TEST(SingleSourceTest, OptimumWithoutPrefixBudgetProperty) {
  SingleSourceInstance inst{path_tree(2), 0, {{1, 10}}};
  for (int i = 0; i < 5; ++i) inst.customers.push_back({2, 6});
  const SingleSourceResult r = solve_single_source(inst);
  EXPECT_EQ(r.revenue, 36);
  EXPECT_EQ(brute_force_opt(to_instance(inst)).opt_revenue, 36);
  EXPECT_FALSE(r.prefix_budget_property);
  EXPECT_FALSE(has_prefix_budget_property(inst, r.scheme));
}

TEST(SingleSourceTest, MatchesOracleOnRandomInstances) {
  int with_property = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const SingleSourceInstance inst = random_single_source(seed, 6, 5);
    const SingleSourceResult r = solve_single_source(inst);
    const Instance general = to_instance(inst);
    ASSERT_EQ(r.revenue, brute_force_opt(general).opt_revenue) << "seed " << seed;
    ASSERT_EQ(r.revenue, evaluate_revenue(general, r.scheme).total);
    ASSERT_EQ(r.revenue, single_source_revenue(inst, r.scheme));
    ASSERT_EQ(r.prefix_budget_property, has_prefix_budget_property(inst, r.scheme));
    with_property += r.prefix_budget_property ? 1 : 0;
  }
  EXPECT_GT(with_property, 100);
}

TEST(SingleSourceTest, RationalBudgetsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SingleSourceInstance inst = random_single_source(seed + 500, 5, 5);
    for (auto& c : inst.customers) c.budget /= 3;
    const SingleSourceResult r = solve_single_source(inst);
    ASSERT_EQ(r.revenue, brute_force_opt(to_instance(inst)).opt_revenue) << "seed " << seed;
  }
}

}  // namespace
}  // namespace tollbooth
