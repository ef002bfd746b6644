#pragma once

// Exact optimum for tiny instances, and the grid-rounding construction that
// turns a pricing into one whose segment totals lie on a gamma grid.

#include <vector>

#include "tollbooth/decomp_solver.hpp"
#include "tollbooth/decomposition.hpp"
#include "tollbooth/model.hpp"

namespace tollbooth {

struct OracleLimits {
  int max_edges = 8;
  int max_customers = 8;
};

struct OracleResult {
  PricingScheme opt_scheme;
  Rational opt_revenue;
  std::vector<int> winner_set;  // customers buying under opt_scheme
};

// For every winner set W, maximizes the winners' total payment subject to
// each winner's path price staying within her budget; edges on no winner
// path are priced 0. Each such LP is solved exactly by a rational simplex
// (Bland's rule) that walks basic solutions. Throws ValidationError beyond
// the limits.
OracleResult brute_force_opt(const Instance& instance, const OracleLimits& limits = {});

// Best scheme with integer edge prices in [0, max_price]; a lower bound on OPT.
Rational grid_search_opt(const Instance& instance, int max_price);

// Caps skeleton edges at b_max, then per segment: zero every edge when the
// total is below the smallest positive grid value, else scale the segment
// uniformly down to the largest grid value not exceeding its total.
// Non-skeleton edges are left as they are.
PricingScheme gamma_round(const Instance& instance, const PricingScheme& scheme,
                          const SkeletonInfo& skeleton, const GammaGrid& grid);

}  // namespace tollbooth
