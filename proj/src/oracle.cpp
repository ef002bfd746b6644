#include "tollbooth/oracle.hpp"

#include <algorithm>
#include <string>

#include "tollbooth/errors.hpp"

namespace tollbooth {
namespace {

// max c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is feasible.
// Dense tableau over exact rationals; Bland's rule prevents cycling.
std::vector<Rational> simplex_max(const std::vector<std::vector<Rational>>& a,
                                  const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t rows = a.size();
  const std::size_t vars = c.size();
  const std::size_t cols = vars + rows;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < vars; ++j) t[r][j] = a[r][j];
    t[r][vars + r] = 1;
    t[r][cols] = b[r];
    basis[r] = vars + r;
  }
  // reduced costs c_j - z_j
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < vars; ++j) reduced[j] = c[j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(reduced[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      Rational ratio = t[r][cols] / t[r][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    if (leave == rows) throw InvariantViolation("unbounded pricing LP");
    const Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || sgn(t[r][enter]) == 0) continue;
      const Rational factor = t[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= factor * t[leave][j];
    }
    const Rational factor = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= factor * t[leave][j];
    basis[leave] = enter;
  }
  std::vector<Rational> x(vars);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < vars) x[basis[r]] = t[r][cols];
  }
  return x;
}

}  // namespace

OracleResult brute_force_opt(const Instance& instance, const OracleLimits& limits) {
  const int m = instance.edge_count();
  const int n = instance.customer_count();
  if (m > limits.max_edges || n > limits.max_customers) {
    throw ValidationError("oracle limited to " + std::to_string(limits.max_edges) + " edges and " +
                          std::to_string(limits.max_customers) + " customers");
  }
  if (n >= 31) throw ValidationError("oracle customer count too large");

  OracleResult best;
  best.opt_scheme = PricingScheme(m);
  best.opt_revenue = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<int> winners;
    Rational budget_sum = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) {
        winners.push_back(i);
        budget_sum += instance.customer(i).budget;
      }
    }
    // The LP value never exceeds the winners' budgets.
    if (budget_sum <= best.opt_revenue) continue;

    // Variables: edges on some winner path.
    std::vector<int> var_of(static_cast<std::size_t>(m), -1);
    std::vector<EdgeId> edge_of;
    for (int i : winners) {
      for (EdgeId e : instance.path(i)) {
        if (var_of[static_cast<std::size_t>(e)] == -1) {
          var_of[static_cast<std::size_t>(e)] = static_cast<int>(edge_of.size());
          edge_of.push_back(e);
        }
      }
    }
    std::vector<std::vector<Rational>> a(winners.size(), std::vector<Rational>(edge_of.size()));
    std::vector<Rational> b;
    std::vector<Rational> c(edge_of.size());
    for (std::size_t r = 0; r < winners.size(); ++r) {
      for (EdgeId e : instance.path(winners[r])) {
        const auto j = static_cast<std::size_t>(var_of[static_cast<std::size_t>(e)]);
        a[r][j] = 1;
        c[j] += 1;
      }
      b.push_back(instance.customer(winners[r]).budget);
    }
    const std::vector<Rational> x = simplex_max(a, b, c);
    PricingScheme scheme(m);
    for (std::size_t j = 0; j < edge_of.size(); ++j) scheme.set_price(edge_of[j], x[j]);
    // Non-winners may buy too; the realized revenue is at least the LP value.
    Rational revenue = evaluate_revenue(instance, scheme).total;
    if (revenue > best.opt_revenue) {
      best.opt_revenue = std::move(revenue);
      best.opt_scheme = std::move(scheme);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (best.opt_scheme.path_price(instance.path(i)) <= instance.customer(i).budget) {
      best.winner_set.push_back(i);
    }
  }
  return best;
}

Rational grid_search_opt(const Instance& instance, int max_price) {
  const int m = instance.edge_count();
  std::vector<int> digits(static_cast<std::size_t>(m), 0);
  Rational best = 0;
  PricingScheme scheme(m);
  while (true) {
    for (EdgeId e = 0; e < m; ++e) scheme.set_price(e, digits[static_cast<std::size_t>(e)]);
    best = std::max(best, evaluate_revenue(instance, scheme).total);
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] > max_price) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return best;
}

PricingScheme gamma_round(const Instance& instance, const PricingScheme& scheme,
                          const SkeletonInfo& skeleton, const GammaGrid& grid) {
  if (scheme.size() != instance.edge_count()) throw ValidationError("scheme does not match instance");
  PricingScheme out = scheme;
  for (EdgeId e : skeleton.skeleton_edges) {
    if (out.price(e) > grid.b_max) out.set_price(e, grid.b_max);
  }
  for (const auto& edges : skeleton.segment_edges) {
    const Rational total = out.path_price(edges);
    if (sgn(total) == 0) continue;
    const Rational& target = grid.floor(total);
    const Rational factor = target / total;
    for (EdgeId e : edges) out.set_price(e, out.price(e) * factor);
  }
  return out;
}

}  // namespace tollbooth
