#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "tollbooth/bench.hpp"
#include "tollbooth/errors.hpp"
#include "tollbooth/io.hpp"

namespace tollbooth {
namespace {

TEST(GenerateInstanceTest, OneEdgeTree) {
  const Instance inst = generate_instance(1, 1, {}, 5);
  EXPECT_EQ(inst.tree().vertex_count(), 2);
  EXPECT_EQ(inst.edge_count(), 1);
  EXPECT_EQ(inst.customer_count(), 1);
}

TEST(GenerateInstanceTest, DeterministicInSeed) {
  const auto a = to_json(generate_instance(12, 8, {}, 42)).dump();
  const auto b = to_json(generate_instance(12, 8, {}, 42)).dump();
  const auto c = to_json(generate_instance(12, 8, {}, 43)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(GenerateInstanceTest, ValidInstancesWithDistinctPairs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_instance(12, 8, {}, seed);
    // Round trip through the validating constructor.
    const Instance again = instance_from_json(to_json(inst));
    ASSERT_EQ(again.customer_count(), 8);
    std::set<std::pair<int, int>> pairs;
    for (const Customer& c : inst.customers()) {
      ASSERT_GE(c.budget, 1);
      ASSERT_LE(c.budget, 10);
      ASSERT_EQ(c.budget.get_den(), 1);
      ASSERT_TRUE(pairs.emplace(std::min(c.s, c.t), std::max(c.s, c.t)).second);
    }
  }
}

TEST(GenerateInstanceTest, RationalBudgets) {
  const Instance inst = generate_instance(6, 10, {BudgetKind::kRational, 3, 4}, 8);
  for (const Customer& c : inst.customers()) {
    EXPECT_GT(c.budget, 0);
    EXPECT_LE(c.budget, 3);
    EXPECT_EQ(4 % c.budget.get_den().get_si(), 0);
  }
}

TEST(GenerateInstanceTest, RejectsImpossibleRequests) {
  EXPECT_THROW(generate_instance(0, 0, {}, 1), ValidationError);
  EXPECT_THROW(generate_instance(2, 4, {}, 1), ValidationError);
  EXPECT_NO_THROW(generate_instance(2, 3, {}, 1));
}

TEST(ExperimentConfigTest, ParsesAndValidates) {
  const auto doc = nlohmann::json::parse(R"({"sizes": [3, 4], "customers": 4, "trials": 2, "seed": 9,
      "mode": "randomized", "oracle": true, "budget": {"kind": "rational", "max": 5, "denominator": 2}})");
  const ExperimentConfig cfg = experiment_config_from_json(doc);
  EXPECT_EQ(cfg.sizes, (std::vector<int>{3, 4}));
  EXPECT_EQ(cfg.mode, Mode::kRandomized);
  EXPECT_EQ(cfg.budgets.kind, BudgetKind::kRational);
  EXPECT_EQ(cfg.budgets.denominator, 2);
  EXPECT_THROW(experiment_config_from_json(nlohmann::json::parse(R"({"sizes": [3], "trials": 0})")),
               ValidationError);
  EXPECT_THROW(experiment_config_from_json(nlohmann::json::parse(R"({"sizes": [30], "oracle": true})")),
               ValidationError);
  EXPECT_THROW(experiment_config_from_json(nlohmann::json::parse(R"({"sizes": [3], "mode": "fast"})")),
               ValidationError);
  EXPECT_THROW(experiment_config_from_json(nlohmann::json::parse(R"({"trials": 1})")), ValidationError);
}

std::string csv_without_wall_time(const std::vector<TrialRow>& rows) {
  std::vector<TrialRow> copy = rows;
  for (auto& r : copy) r.wall_millis = 0;
  std::ostringstream out;
  write_csv(out, copy);
  return out.str();
}

TEST(RunSuiteTest, OracleRowsRespectTheBound) {
  ExperimentConfig cfg;
  cfg.sizes = {2, 4, 6};
  cfg.customers = 5;
  cfg.trials = 3;
  cfg.seed = 17;
  cfg.oracle = true;
  const auto rows = run_suite(cfg);
  ASSERT_EQ(rows.size(), 9U);
  for (const TrialRow& r : rows) {
    ASSERT_TRUE(r.opt.has_value());
    ASSERT_LE(r.revenue, *r.opt);
    ASSERT_GE(256 * (r.levels + 1) * r.revenue, *r.opt);
  }
  EXPECT_EQ(rows[0].n, 3);  // a 2-edge tree has only three endpoint pairs
  EXPECT_EQ(csv_without_wall_time(rows), csv_without_wall_time(run_suite(cfg)));
}

TEST(RunSuiteTest, CsvSchema) {
  ExperimentConfig cfg;
  cfg.sizes = {3};
  cfg.customers = 2;
  std::ostringstream out;
  write_csv(out, run_suite(cfg));
  std::istringstream in(out.str());
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, kCsvHeader);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
  EXPECT_NE(row.find(",,,"), std::string::npos);  // no oracle columns
}

}  // namespace
}  // namespace tollbooth
