#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tollbooth/decomp_solver.hpp"
#include "tollbooth/errors.hpp"
#include "tollbooth/oracle.hpp"

namespace tollbooth {
namespace {

using testing::frac;
using testing::path_tree;

std::vector<Rational> rationals(std::initializer_list<Rational> values) { return values; }

TEST(GammaGridTest, SmallCases) {
  const GammaGrid a = build_gamma_grid(2, 4, 8);
  EXPECT_EQ(a.values, rationals({0, frac(1, 4), frac(1, 2), 1, 2, 4, 8, 16, 32}));
  const GammaGrid b = build_gamma_grid(1, 2, 1);
  EXPECT_EQ(b.values, rationals({0, frac(1, 8), frac(1, 4), frac(1, 2), 1, 2}));
  EXPECT_EQ(build_gamma_grid(3, 5, 0).values, rationals({0}));
  EXPECT_THROW(build_gamma_grid(0, 1, 1), ValidationError);
  EXPECT_THROW(build_gamma_grid(1, 1, -1), ValidationError);
}

TEST(GammaGridTest, DoublingBudgetDoublesValues) {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 9; ++m) {
      const GammaGrid g = build_gamma_grid(n, m, frac(3, 2));
      const GammaGrid h = build_gamma_grid(n, m, 3);
      ASSERT_EQ(g.values.size(), h.values.size());
      for (std::size_t i = 0; i < g.values.size(); ++i) ASSERT_EQ(2 * g.values[i], h.values[i]);
    }
  }
}

// The largest value reaches past m * b_max / 2, so scaling any total in
// (0, m * b_max] to its grid floor keeps more than half of it.
TEST(GammaGridTest, TopValueAndFloor) {
  for (int n = 1; n <= 8; ++n) {
    for (int m = 1; m <= 12; ++m) {
      const GammaGrid g = build_gamma_grid(n, m, 5);
      ASSERT_GT(g.values.back(), frac(m * 5, 2));
      ASSERT_LE(g.values.back(), m * 5);
      for (int num = 1; num <= 40; ++num) {
        const Rational x(num * m, 8);
        const Rational& f = g.floor(x);
        ASSERT_LE(f, x);
        if (x >= g.values[1]) ASSERT_GT(2 * f, x);
      }
    }
  }
  const GammaGrid g = build_gamma_grid(2, 4, 8);
  EXPECT_EQ(g.floor(3), 2);
  EXPECT_EQ(g.floor(frac(1, 8)), 0);
  EXPECT_EQ(g.floor(100), 32);
  EXPECT_TRUE(g.contains(16));
  EXPECT_FALSE(g.contains(3));
}

TEST(IsSeparatedTest, Basics) {
  const Tree tree = path_tree(3);
  const Decomposition trivial = trivial_decomposition(tree);
  EXPECT_FALSE(is_separated(std::vector<EdgeId>{1}, trivial));
  EXPECT_TRUE(is_separated(std::vector<EdgeId>{0, 1}, trivial));
  const Decomposition halves = make_decomposition(tree, {{0, 1}, {2}});
  EXPECT_FALSE(is_separated(std::vector<EdgeId>{0, 1}, halves));
  EXPECT_TRUE(is_separated(std::vector<EdgeId>{1, 2}, halves));
}

// Two edges meeting at vertex 1, one customer across it.
struct CrossingFixture {
  Instance sub{path_tree(2), {{0, 2, 6}}};
  Decomposition dec = trivial_decomposition(path_tree(2));
  SkeletonInfo skeleton = extract_skeleton(path_tree(2), dec);
};

TEST(Scenario1Test, AllInactiveIsZero) {
  const CrossingFixture f;
  EXPECT_EQ(scenario1(f.sub, f.dec, f.skeleton, CoinVector{0, 0}), PricingScheme(2));
}

TEST(Scenario1Test, ActivatingOneSideCollectsBudget) {
  const CrossingFixture f;
  const PricingScheme left = scenario1(f.sub, f.dec, f.skeleton, CoinVector{1, 0});
  EXPECT_EQ(evaluate_revenue(f.sub, left).total, 6);
  EXPECT_EQ(brute_force_opt(f.sub).opt_revenue, 6);
  const PricingScheme both = scenario1(f.sub, f.dec, f.skeleton, CoinVector{1, 1});
  EXPECT_EQ(evaluate_revenue(f.sub, both).total, 0);
}

TEST(Scenario1Test, ExpectationIsHalfTheBudget) {
  const CrossingFixture f;
  EXPECT_EQ(expected_revenue(f.sub, f.dec, Scenario::kOne), 3);
}

TEST(Scenario1Test, ZeroBudgetsGiveZeroExpectation) {
  const Instance sub(path_tree(2), {{0, 2, 0}, {1, 2, 0}});
  const Decomposition dec = make_decomposition(sub.tree(), {{0}, {1}});
  EXPECT_THROW(expected_revenue(sub, dec, Scenario::kOne), ValidationError);  // 1-2 is not separated
  const Instance crossing(path_tree(2), {{0, 2, 0}});
  EXPECT_EQ(expected_revenue(crossing, dec, Scenario::kOne), 0);
}

// a=0 - v1=1 - v2=2 - v3=3 - v4=4 - d=5, with x=6 hanging off v2. The middle
// subtree holds the segment v1..v4 and the spur to x.
struct SegmentFixture {
  Tree tree{7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}}};
  Decomposition dec = make_decomposition(tree, {{0}, {1, 2, 3, 5}, {4}});
  SkeletonInfo skeleton = extract_skeleton(tree, dec);
};

TEST(Scenario2Test, ThreeEdgeSegmentLeftRooted) {
  const SegmentFixture f;
  ASSERT_EQ(f.skeleton.segments.size(), 1U);
  ASSERT_EQ(f.skeleton.segments[0], (std::vector<Vertex>{1, 2, 3, 4}));
  const Instance sub(f.tree, {{6, 0, 3}});
  const PricingScheme s = scenario2(sub, f.dec, f.skeleton, {5}, {Selector::kLeftRooted});
  EXPECT_EQ(s.price(1), 3);
  EXPECT_EQ(s.price(2), 0);
  EXPECT_EQ(s.price(3), 2);
  EXPECT_EQ(s.price(0), 0);
  EXPECT_EQ(s.price(5), 0);
  EXPECT_EQ(evaluate_revenue(sub, s).total, 3);
}

TEST(Scenario2Test, EverySelectorKeepsTheSegmentTotal) {
  const SegmentFixture f;
  const Instance sub(f.tree, {{6, 0, 3}, {6, 5, 7}, {0, 5, 9}, {3, 0, 2}});
  for (int g = 0; g <= 12; ++g) {
    for (int sel = 0; sel < 4; ++sel) {
      const PricingScheme s = scenario2(sub, f.dec, f.skeleton, {frac(g, 2)}, {static_cast<Selector>(sel)});
      EXPECT_EQ(s.path_price(f.skeleton.segment_edges[0]), frac(g, 2));
      for (int e = 0; e < s.size(); ++e) EXPECT_GE(s.price(e), 0);
    }
  }
}

TEST(Scenario2Test, DegenerateSegments) {
  const Tree tree = path_tree(4);
  const Decomposition dec = make_decomposition(tree, {{0}, {1, 2}, {3}});
  const SkeletonInfo skel = extract_skeleton(tree, dec);
  ASSERT_EQ(skel.segment_edges, (std::vector<std::vector<EdgeId>>{{1, 2}}));
  const Instance sub(tree, {{0, 4, 9}});
  for (int sel = 0; sel < 4; ++sel) {
    EXPECT_EQ(scenario2(sub, dec, skel, {4}, {static_cast<Selector>(sel)}).path_price(std::vector<EdgeId>{1, 2}), 4);
  }
  const Tree three = path_tree(3);
  const Decomposition single = trivial_decomposition(three);
  const SkeletonInfo one = extract_skeleton(three, single);
  const Instance across(three, {{0, 3, 9}});
  for (int sel = 0; sel < 4; ++sel) {
    const PricingScheme s = scenario2(across, single, one, {5}, {static_cast<Selector>(sel)});
    EXPECT_EQ(s.price(1), 5);
    EXPECT_EQ(s.price(0), 0);
  }
}

TEST(Scenario2Test, RejectsBadGuesses) {
  const SegmentFixture f;
  const Instance sub(f.tree, {{6, 0, 3}});
  EXPECT_THROW(scenario2(sub, f.dec, f.skeleton, {5, 1}, {Selector::kFirstEdge}), ValidationError);
  EXPECT_THROW(scenario2(sub, f.dec, f.skeleton, {-1}, {Selector::kFirstEdge}), ValidationError);
}

TEST(SolveDecompositionTest, NoSkeletonEdgesSkipsScenarioTwo) {
  const CrossingFixture f;
  const DecompositionResult r = solve_decomposition(f.sub, f.dec, Mode::kDerandomized);
  EXPECT_FALSE(r.scenario2_revenue.has_value());
  EXPECT_EQ(r.winner, Scenario::kOne);
  EXPECT_EQ(r.revenue, 6);
  EXPECT_EQ(r.guesses_examined, 0U);
  EXPECT_EQ(r.outcomes_examined, 4U);
}

TEST(SolveDecompositionTest, NineGuessesForOneSegment) {
  const Tree tree = path_tree(4);
  const Decomposition dec = make_decomposition(tree, {{0}, {1, 2}, {3}});
  const Instance sub(tree, {{0, 2, 8}, {0, 4, 3}});
  const DecompositionResult r = solve_decomposition(sub, dec, Mode::kDerandomized);
  EXPECT_EQ(r.guesses_examined, 9U);
  EXPECT_EQ(r.revenue, evaluate_revenue(sub, r.scheme).total);
  EXPECT_GE(r.revenue, r.scenario1_revenue);
}

TEST(SolveDecompositionTest, RequiresSeparatedCustomers) {
  const Tree tree = path_tree(2);
  const Instance sub(tree, {{0, 1, 1}});
  EXPECT_THROW(solve_decomposition(sub, trivial_decomposition(tree), Mode::kDerandomized), ValidationError);
}

TEST(SolveDecompositionTest, CapWithoutFallbackThrows) {
  const SegmentFixture f;
  const Instance sub(f.tree, {{6, 0, 3}, {0, 5, 4}});
  SolverConfig cfg;
  cfg.max_guesses = 2;
  cfg.allow_fallback = false;
  EXPECT_THROW(solve_decomposition(sub, f.dec, Mode::kDerandomized, cfg), CapExceededError);
  cfg.allow_fallback = true;
  const DecompositionResult r = solve_decomposition(sub, f.dec, Mode::kDerandomized, cfg);
  EXPECT_TRUE(r.fallback_used);
  EXPECT_EQ(r.guesses_examined, static_cast<std::uint64_t>(cfg.fallback_trials));
}

TEST(SolveDecompositionTest, DerandomizedBeatsExpectationsAndRandomized) {
  const SegmentFixture f;
  const Instance sub(f.tree, {{6, 0, 3}, {6, 5, 7}, {0, 5, 9}, {0, 3, 2}});
  const DecompositionResult det = solve_decomposition(sub, f.dec, Mode::kDerandomized);
  EXPECT_GE(det.revenue, expected_revenue(sub, f.dec, Scenario::kOne));
  EXPECT_GE(det.revenue, best_guess_expected_revenue(sub, f.dec));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    const DecompositionResult rnd = solve_decomposition(sub, f.dec, Mode::kRandomized, cfg);
    EXPECT_LE(rnd.revenue, det.revenue);
    EXPECT_EQ(rnd.revenue, solve_decomposition(sub, f.dec, Mode::kRandomized, cfg).revenue);
  }
  const OracleResult opt = brute_force_opt(sub);
  EXPECT_LE(det.revenue, opt.opt_revenue);
  EXPECT_GE(256 * det.revenue, opt.opt_revenue);
}

TEST(SolveDecompositionTest, ProgressLinesReported) {
  const SegmentFixture f;
  const Instance sub(f.tree, {{6, 0, 3}});
  std::vector<std::string> lines;
  SolverConfig cfg;
  cfg.progress = [&lines](std::string_view line) { lines.emplace_back(line); };
  solve_decomposition(sub, f.dec, Mode::kDerandomized, cfg);
  ASSERT_FALSE(lines.empty());
  EXPECT_NE(lines.back().find("guesses"), std::string::npos);
}

}  // namespace
}  // namespace tollbooth
