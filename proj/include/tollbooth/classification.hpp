#pragma once

// Classify-and-select driver. The tree is decomposed recursively; level l
// holds the customers first separated by the level-l decompositions. Each
// class is priced independently and the best class scheme wins.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "tollbooth/decomp_solver.hpp"
#include "tollbooth/decomposition.hpp"
#include "tollbooth/model.hpp"

namespace tollbooth {

// max(2, ceil(log2(m)^exponent)).
int choose_k(int m, double exponent = 0.5);

// min(3/k, (2k+1)/(3k)): per-level shrink factor of subtree sizes.
double decay_factor(int k);

// ceil(log2 m / log2(1/rho)) + 1.
int level_bound(int m, int k);

// One decomposed subtree of the previous level and the customers it separates.
struct ClassEntry {
  std::vector<EdgeId> subtree_edges;  // ids in the input tree, sorted
  Subtree subtree;                    // local view of subtree_edges
  Decomposition decomposition;        // over subtree.tree (local edge ids)
  std::vector<int> separated_customers;
};

struct ClassifiedInstance {
  int k = 2;
  std::vector<std::vector<ClassEntry>> levels;  // levels[l - 1] is class C_l
  // Customers on single-edge paths that no decomposition separates.
  std::map<EdgeId, std::vector<int>> terminal_single_edge_customers;

  int level_count() const { return static_cast<int>(levels.size()); }
};

ClassifiedInstance classify(const Instance& instance, std::optional<int> k = std::nullopt);

struct SingleEdgePrice {
  Rational price;
  Rational revenue;
};

// Best single posted price for one item; ties go to the smaller price.
SingleEdgePrice single_edge_pricing(std::span<const Rational> budgets);

struct ClassReport {
  bool terminal = false;
  int level = 0;  // 1-based for decomposition classes
  int customers = 0;
  Rational revenue;                  // of the glued class scheme on the full instance
  Rational sub_revenue;              // sum of per-subtree revenues
  std::uint64_t guesses_examined = 0;
  std::uint64_t outcomes_examined = 0;
  bool fallback_used = false;
  double millis = 0;
};

struct SolveReport {
  int k = 2;
  int levels = 0;
  int chosen_class = -1;  // -1 when there are no classes
  std::vector<ClassReport> classes;
  double total_millis = 0;
};

struct SolveResult {
  PricingScheme scheme;
  Rational revenue;
  SolveReport report;
  std::vector<PricingScheme> class_schemes;  // same order as report.classes
};

struct FullSolveOptions {
  std::optional<int> k;
  SolverConfig solver;
};

SolveResult solve_full(const Instance& instance, Mode mode, const FullSolveOptions& options = {});

// Report as JSON; timing fields are omitted when include_timing is false.
nlohmann::json to_json(const SolveReport& report, bool include_timing = true);

// Stable 64-bit mix for deriving per-subproblem seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tollbooth
