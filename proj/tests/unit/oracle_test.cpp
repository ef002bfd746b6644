#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tollbooth/errors.hpp"
#include "tollbooth/oracle.hpp"

namespace tollbooth {
namespace {

using testing::frac;
using testing::path_tree;
using testing::star_tree;

TEST(BruteForceOptTest, OneCustomer) {
  const Instance inst(path_tree(3), {{0, 3, frac(7, 2)}});
  const OracleResult r = brute_force_opt(inst);
  EXPECT_EQ(r.opt_revenue, frac(7, 2));
  EXPECT_EQ(r.winner_set, (std::vector<int>{0}));
}

TEST(BruteForceOptTest, TwoLeafStar) {
  // x = 1, y = 2; edge 0 is c-x, edge 1 is c-y.
  const Instance inst(star_tree(2), {{1, 0, 2}, {1, 2, 3}});
  const OracleResult r = brute_force_opt(inst);
  EXPECT_EQ(r.opt_revenue, 5);
  EXPECT_EQ(r.opt_scheme.price(0), 2);
  EXPECT_EQ(r.opt_scheme.price(1), 1);
  EXPECT_EQ(r.winner_set, (std::vector<int>{0, 1}));
}

TEST(BruteForceOptTest, FractionalOptimum) {
  // Triangle of paths on a 3-leaf star: each pair of edges has budget 1.
  // p_a + p_b <= 1 etc. gives 1/2 per edge and revenue 3 from three buyers.
  const Instance inst(star_tree(3), {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}});
  const OracleResult r = brute_force_opt(inst);
  EXPECT_EQ(r.opt_revenue, 3);
  EXPECT_EQ(r.opt_scheme.price(0), frac(1, 2));
  EXPECT_GE(r.opt_revenue, grid_search_opt(inst, 2));
  EXPECT_EQ(grid_search_opt(inst, 2), 2);
}

TEST(BruteForceOptTest, SizeGuard) {
  const Instance big = generate_instance(9, 2, {}, 1);
  EXPECT_THROW(brute_force_opt(big), ValidationError);
  EXPECT_NO_THROW(brute_force_opt(big, {9, 8}));
}

TEST(BruteForceOptTest, NoCustomers) {
  const OracleResult r = brute_force_opt(Instance(path_tree(2), {}));
  EXPECT_EQ(r.opt_revenue, 0);
  EXPECT_TRUE(r.winner_set.empty());
}

TEST(BruteForceOptTest, AgreesWithIntegerGridSearch) {
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int m = 1 + static_cast<int>(seed % 4);
    const int n = std::min(1 + static_cast<int>(seed % 5), m * (m + 1) / 2);
    const Instance inst = generate_instance(m, n, {BudgetKind::kInteger, 6, 1}, seed);
    const OracleResult r = brute_force_opt(inst);
    const Rational grid = grid_search_opt(inst, 6);
    ASSERT_EQ(evaluate_revenue(inst, r.opt_scheme).total, r.opt_revenue);
    ASSERT_GE(r.opt_revenue, grid);
    ASSERT_GE(r.opt_revenue, inst.max_budget());
    bool integral = true;
    for (const Rational& p : r.opt_scheme.prices()) integral = integral && p.get_den() == 1;
    if (integral) {
      ASSERT_EQ(r.opt_revenue, grid) << "seed " << seed;
      ++equal;
    }
  }
  EXPECT_GT(equal, 25);
}

struct RoundFixture {
  Tree tree = path_tree(4);
  Decomposition dec = make_decomposition(tree, {{0}, {1, 2}, {3}});
  SkeletonInfo skeleton = extract_skeleton(tree, dec);
  Instance inst{tree, {{0, 4, 8}, {0, 2, 8}}};
  GammaGrid grid = build_gamma_grid(2, 4, 8);  // {0, 1/4, ..., 32}
};

TEST(GammaRoundTest, ScalesSegmentDownToGridFloor) {
  const RoundFixture f;
  const PricingScheme p(std::vector<Rational>{5, 1, 2, 7});
  const PricingScheme q = gamma_round(f.inst, p, f.skeleton, f.grid);
  EXPECT_EQ(q.price(1), frac(2, 3));
  EXPECT_EQ(q.price(2), frac(4, 3));
  EXPECT_EQ(q.price(0), 5);
  EXPECT_EQ(q.price(3), 7);
}

TEST(GammaRoundTest, TinySegmentIsZeroed) {
  const RoundFixture f;
  const PricingScheme p(std::vector<Rational>{5, frac(1, 16), frac(1, 16), 7});
  const PricingScheme q = gamma_round(f.inst, p, f.skeleton, f.grid);
  EXPECT_EQ(q.price(1), 0);
  EXPECT_EQ(q.price(2), 0);
}

TEST(GammaRoundTest, GridTotalsAreFixedPoints) {
  const RoundFixture f;
  const PricingScheme p(std::vector<Rational>{5, frac(1, 2), frac(7, 2), 7});
  EXPECT_EQ(gamma_round(f.inst, p, f.skeleton, f.grid), p);
}

TEST(GammaRoundTest, CapsSkeletonEdgesAtMaxBudget) {
  const RoundFixture f;
  const PricingScheme p(std::vector<Rational>{50, 20, 20, 70});
  const PricingScheme q = gamma_round(f.inst, p, f.skeleton, f.grid);
  EXPECT_EQ(q.price(1) + q.price(2), 16);
  EXPECT_EQ(q.price(1), 8);
  EXPECT_EQ(q.price(0), 50);
}

}  // namespace
}  // namespace tollbooth
