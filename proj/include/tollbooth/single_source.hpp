#pragma once

// Exact revenue-maximizing prices when every customer path starts at a
// common root.

#include <vector>

#include "tollbooth/model.hpp"

namespace tollbooth {

struct SingleSourceCustomer {
  Vertex target = 0;
  Rational budget;
};

// Every customer wants the path from `root` to her target.
struct SingleSourceInstance {
  Tree tree;
  Vertex root = 0;
  std::vector<SingleSourceCustomer> customers;
};

struct SingleSourceResult {
  PricingScheme scheme;
  Rational revenue;
  // Whether the returned optimum has the prefix-budget property. False only
  // when no optimal pricing has it.
  bool prefix_budget_property = true;
};

// Dynamic program over the rooted tree with cumulative root-to-vertex prices
// drawn from {0} and the budgets. Among optimal pricings, one with the
// prefix-budget property is returned whenever one exists; ties go to smaller
// cumulative prices.
SingleSourceResult solve_single_source(const SingleSourceInstance& instance);

// Total price of the root-to-v path, per vertex.
std::vector<Rational> cumulative_prices(const SingleSourceInstance& instance,
                                        const PricingScheme& scheme);

// Every positive cumulative price at v equals the budget of a customer whose
// target lies on the root-to-v path.
bool has_prefix_budget_property(const SingleSourceInstance& instance,
                                const PricingScheme& scheme);

// Revenue of the scheme on the single-source instance.
Rational single_source_revenue(const SingleSourceInstance& instance, const PricingScheme& scheme);

// The equivalent general instance (s = root, t = target), for cross-checks.
Instance to_instance(const SingleSourceInstance& instance);

}  // namespace tollbooth
