#include "tollbooth/single_source.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "tollbooth/errors.hpp"

namespace tollbooth {
namespace {

void validate(const SingleSourceInstance& inst) {
  if (!inst.tree.valid_vertex(inst.root)) throw ValidationError("invalid single-source root");
  for (std::size_t i = 0; i < inst.customers.size(); ++i) {
    const auto& c = inst.customers[i];
    if (!inst.tree.valid_vertex(c.target)) {
      throw ValidationError("single-source customer " + std::to_string(i) + " has invalid target");
    }
    if (c.target == inst.root) {
      throw ValidationError("single-source customer " + std::to_string(i) + " targets the root");
    }
    if (sgn(c.budget) < 0) {
      throw ValidationError("single-source customer " + std::to_string(i) + " has negative budget");
    }
  }
}

struct DpSolution {
  Rational revenue;
  std::vector<int> level;  // candidate index of the cumulative price per vertex
};

// allowed[v][c]: whether candidate c may be the cumulative price at v.
DpSolution run_dp(const RootedTree& rooted, const std::vector<Rational>& candidates,
                  const std::vector<std::vector<Rational>>& budgets_at,
                  const std::vector<std::vector<char>>& allowed) {
  const std::size_t n = rooted.order().size();
  const std::size_t kc = candidates.size();
  std::vector<std::vector<std::optional<Rational>>> below(
      n, std::vector<std::optional<Rational>>(kc, Rational(0)));
  std::vector<std::vector<int>> choice(n);

  const auto& order = rooted.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    const auto ui = static_cast<std::size_t>(u);
    if (u == rooted.root()) break;
    // Suffix maximum over candidates >= c, ties toward the smaller candidate.
    const auto& budgets = budgets_at[ui];  // sorted ascending
    std::vector<std::optional<Rational>> best(kc);
    choice[ui].assign(kc, -1);
    std::optional<Rational> running;
    int running_arg = -1;
    std::size_t buyers_from = budgets.size();
    for (std::size_t c = kc; c-- > 0;) {
      while (buyers_from > 0 && budgets[buyers_from - 1] >= candidates[c]) --buyers_from;
      if (allowed[ui][c] && below[ui][c].has_value()) {
        const auto buyers = static_cast<long>(budgets.size() - buyers_from);
        Rational value = *below[ui][c] + candidates[c] * buyers;
        if (!running || value >= *running) {
          running = std::move(value);
          running_arg = static_cast<int>(c);
        }
      }
      best[c] = running;
      choice[ui][c] = running_arg;
    }
    const auto pi = static_cast<std::size_t>(rooted.parent(u));
    for (std::size_t c = 0; c < kc; ++c) {
      if (!below[pi][c]) continue;
      if (!best[c]) {
        below[pi][c].reset();
      } else {
        *below[pi][c] += *best[c];
      }
    }
    below[ui].clear();
    below[ui].shrink_to_fit();
  }

  DpSolution sol;
  const auto ri = static_cast<std::size_t>(rooted.root());
  sol.revenue = *below[ri][0];
  sol.level.assign(n, 0);
  for (Vertex v : order) {
    if (v == rooted.root()) continue;
    const auto vi = static_cast<std::size_t>(v);
    const int from = sol.level[static_cast<std::size_t>(rooted.parent(v))];
    sol.level[vi] = choice[vi][static_cast<std::size_t>(from)];
    if (sol.level[vi] < 0) throw InvariantViolation("single-source DP reached an empty state");
  }
  return sol;
}

}  // namespace

SingleSourceResult solve_single_source(const SingleSourceInstance& inst) {
  validate(inst);
  const Tree& tree = inst.tree;
  const auto n = static_cast<std::size_t>(tree.vertex_count());
  const RootedTree rooted(tree, inst.root);

  std::vector<Rational> candidates{Rational(0)};
  std::vector<std::vector<Rational>> budgets_at(n);
  for (const auto& c : inst.customers) {
    candidates.push_back(c.budget);
    budgets_at[static_cast<std::size_t>(c.target)].push_back(c.budget);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto& b : budgets_at) std::sort(b.begin(), b.end());
  const std::size_t kc = candidates.size();

  auto index_of = [&](const Rational& value) {
    return static_cast<std::size_t>(
        std::lower_bound(candidates.begin(), candidates.end(), value) - candidates.begin());
  };

  // Unrestricted search space, and the prefix-budget subspace where the
  // cumulative price at v is 0 or a budget targeted on the root-to-v path.
  const std::vector<std::vector<char>> any(n, std::vector<char>(kc, 1));
  std::vector<std::vector<char>> prefix(n, std::vector<char>(kc, 0));
  for (Vertex v : rooted.order()) {
    const auto vi = static_cast<std::size_t>(v);
    if (v != rooted.root()) prefix[vi] = prefix[static_cast<std::size_t>(rooted.parent(v))];
    prefix[vi][0] = 1;
    for (const Rational& b : budgets_at[vi]) prefix[vi][index_of(b)] = 1;
  }

  const DpSolution best = run_dp(rooted, candidates, budgets_at, any);
  DpSolution chosen = run_dp(rooted, candidates, budgets_at, prefix);
  if (chosen.revenue != best.revenue) chosen = best;

  SingleSourceResult result;
  result.scheme = PricingScheme(tree.edge_count());
  for (Vertex v : rooted.order()) {
    if (v == rooted.root()) continue;
    const auto vi = static_cast<std::size_t>(v);
    const auto pi = static_cast<std::size_t>(rooted.parent(v));
    result.scheme.set_price(rooted.parent_edge(v),
                            candidates[static_cast<std::size_t>(chosen.level[vi])] -
                                candidates[static_cast<std::size_t>(chosen.level[pi])]);
  }
  result.revenue = chosen.revenue;
  if (single_source_revenue(inst, result.scheme) != result.revenue) {
    throw InvariantViolation("single-source DP value disagrees with its pricing");
  }
  result.prefix_budget_property = has_prefix_budget_property(inst, result.scheme);
  return result;
}

std::vector<Rational> cumulative_prices(const SingleSourceInstance& inst,
                                        const PricingScheme& scheme) {
  const RootedTree rooted(inst.tree, inst.root);
  std::vector<Rational> cum(static_cast<std::size_t>(inst.tree.vertex_count()));
  for (Vertex v : rooted.order()) {
    if (v == rooted.root()) continue;
    cum[static_cast<std::size_t>(v)] =
        cum[static_cast<std::size_t>(rooted.parent(v))] + scheme.price(rooted.parent_edge(v));
  }
  return cum;
}

bool has_prefix_budget_property(const SingleSourceInstance& inst, const PricingScheme& scheme) {
  const RootedTree rooted(inst.tree, inst.root);
  const std::vector<Rational> cum = cumulative_prices(inst, scheme);
  std::vector<std::vector<Rational>> budgets_at(static_cast<std::size_t>(inst.tree.vertex_count()));
  for (const auto& c : inst.customers) budgets_at[static_cast<std::size_t>(c.target)].push_back(c.budget);
  for (Vertex v : rooted.order()) {
    const Rational& price = cum[static_cast<std::size_t>(v)];
    if (sgn(price) == 0) continue;
    bool matched = false;
    for (Vertex w = v; w != -1 && !matched; w = rooted.parent(w)) {
      const auto& b = budgets_at[static_cast<std::size_t>(w)];
      matched = std::find(b.begin(), b.end(), price) != b.end();
    }
    if (!matched) return false;
  }
  return true;
}

Rational single_source_revenue(const SingleSourceInstance& inst, const PricingScheme& scheme) {
  const std::vector<Rational> cum = cumulative_prices(inst, scheme);
  Rational total = 0;
  for (const auto& c : inst.customers) {
    const Rational& price = cum[static_cast<std::size_t>(c.target)];
    if (price <= c.budget) total += price;
  }
  return total;
}

Instance to_instance(const SingleSourceInstance& inst) {
  std::vector<Customer> customers;
  for (const auto& c : inst.customers) customers.push_back({inst.root, c.target, c.budget});
  return Instance(inst.tree, std::move(customers));
}

}  // namespace tollbooth
