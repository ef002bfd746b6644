#pragma once

// Random instances and experiment runs with CSV output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tollbooth/classification.hpp"
#include "tollbooth/oracle.hpp"

namespace tollbooth {

enum class BudgetKind { kInteger, kRational };

// Integer: uniform in [1, max]. Rational: uniform over multiples of
// 1/denominator in (0, max].
struct BudgetDistribution {
  BudgetKind kind = BudgetKind::kInteger;
  int max = 10;
  int denominator = 4;
};

// Uniform labelled tree on m + 1 vertices (Pruefer decoding) and n customers
// on distinct unordered endpoint pairs. Deterministic in the seed.
Instance generate_instance(int m, int n, const BudgetDistribution& budgets, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<int> sizes;
  int customers = 8;
  BudgetDistribution budgets;
  int trials = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::kDerandomized;
  bool oracle = false;
  std::string output;  // CSV path; empty means the caller decides
  OracleLimits oracle_limits{12, 8};
  SolverConfig solver;
};

// Throws ValidationError on bad fields, trials < 1, or oracle runs beyond the
// oracle limits.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
void validate(const ExperimentConfig& config);

struct TrialRow {
  int trial = 0;
  int m = 0;
  int n = 0;
  int k = 0;
  int levels = 0;
  Rational revenue;
  std::optional<Rational> opt;
  std::uint64_t guesses = 0;
  double wall_millis = 0;
  std::uint64_t seed = 0;
  bool fallback = false;
};

std::vector<TrialRow> run_suite(const ExperimentConfig& config);

// Columns: trial,m,n,k,L,revenue,opt,ratio,ratio_decimal,guesses,fallback,
// wall_ms,seed. opt/ratio are empty without the oracle.
inline constexpr const char* kCsvHeader =
    "trial,m,n,k,L,revenue,opt,ratio,ratio_decimal,guesses,fallback,wall_ms,seed";
void write_csv(std::ostream& out, const std::vector<TrialRow>& rows);

}  // namespace tollbooth
