#include "tollbooth/classification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tollbooth/errors.hpp"

namespace tollbooth {

int choose_k(int m, double exponent) {
  if (m < 1) throw ValidationError("choose_k needs m >= 1");
  if (exponent == 0.5) {
    // ceil(sqrt(log2 m)) is the least k with 2^(k*k) >= m.
    int k = 0;
    while (k * k < 62 && (std::uint64_t{1} << (k * k)) < static_cast<std::uint64_t>(m)) ++k;
    return std::max(2, k);
  }
  if (!(exponent > 0 && exponent < 1)) throw ValidationError("k exponent must lie in (0, 1)");
  const double raw = std::pow(std::log2(static_cast<double>(m)), exponent);
  return std::max(2, static_cast<int>(std::ceil(raw - 1e-12)));
}

double decay_factor(int k) {
  return std::min(3.0 / k, (2.0 * k + 1.0) / (3.0 * k));
}

int level_bound(int m, int k) {
  const double ratio = std::log2(static_cast<double>(m)) / std::log2(1.0 / decay_factor(k));
  return static_cast<int>(std::ceil(ratio - 1e-12)) + 1;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

ClassifiedInstance classify(const Instance& instance, std::optional<int> k) {
  const Tree& tree = instance.tree();
  const int m = tree.edge_count();
  ClassifiedInstance out;
  if (m == 0) return out;
  out.k = k.value_or(choose_k(m));
  if (out.k < 2) throw ValidationError("k must be at least 2");

  struct Pending {
    std::vector<EdgeId> edges;
    std::vector<int> customers;
  };
  std::vector<Pending> current(1);
  for (EdgeId e = 0; e < m; ++e) current[0].edges.push_back(e);
  for (int i = 0; i < instance.customer_count(); ++i) current[0].customers.push_back(i);

  std::vector<int> owner(static_cast<std::size_t>(m), -1);
  while (!current.empty()) {
    std::vector<Pending> next;
    std::vector<ClassEntry> level;
    for (Pending& item : current) {
      if (item.edges.size() == 1) {
        if (!item.customers.empty()) {
          auto& bucket = out.terminal_single_edge_customers[item.edges.front()];
          bucket.insert(bucket.end(), item.customers.begin(), item.customers.end());
        }
        continue;
      }
      ClassEntry entry;
      entry.subtree = induced_subtree(tree, item.edges);
      entry.decomposition = static_cast<int>(item.edges.size()) >= out.k
                                ? balanced_k_decomposition(entry.subtree.tree, out.k)
                                : trivial_decomposition(entry.subtree.tree);
      const auto& parts = entry.decomposition.subtrees;
      std::vector<Pending> children(parts.size());
      for (std::size_t j = 0; j < parts.size(); ++j) {
        for (EdgeId local : parts[j]) {
          const EdgeId global = entry.subtree.parent_edge[static_cast<std::size_t>(local)];
          owner[static_cast<std::size_t>(global)] = static_cast<int>(j);
          children[j].edges.push_back(global);
        }
        std::sort(children[j].edges.begin(), children[j].edges.end());
      }
      for (int c : item.customers) {
        const auto& path = instance.path(c);
        const int first = owner[static_cast<std::size_t>(path.front())];
        const bool separated = std::any_of(path.begin(), path.end(), [&](EdgeId e) {
          return owner[static_cast<std::size_t>(e)] != first;
        });
        if (separated) {
          entry.separated_customers.push_back(c);
        } else {
          children[static_cast<std::size_t>(first)].customers.push_back(c);
        }
      }
      entry.subtree_edges = std::move(item.edges);
      level.push_back(std::move(entry));
      for (auto& child : children) next.push_back(std::move(child));
    }
    if (!level.empty()) out.levels.push_back(std::move(level));
    current = std::move(next);
  }
  for (auto& [edge, customers] : out.terminal_single_edge_customers) {
    std::sort(customers.begin(), customers.end());
  }
  return out;
}

SingleEdgePrice single_edge_pricing(std::span<const Rational> budgets) {
  if (budgets.empty()) throw ValidationError("single-edge pricing needs at least one budget");
  std::vector<Rational> sorted(budgets.begin(), budgets.end());
  std::sort(sorted.begin(), sorted.end());
  SingleEdgePrice best{sorted.front(), 0};
  bool have = false;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    if (a > 0 && sorted[a] == sorted[a - 1]) continue;
    // everyone from position a upward can afford sorted[a]
    Rational revenue = sorted[a] * static_cast<long>(sorted.size() - a);
    if (!have || revenue > best.revenue) {
      best = {sorted[a], std::move(revenue)};
      have = true;
    }
  }
  return best;
}

SolveResult solve_full(const Instance& instance, Mode mode, const FullSolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto millis_since = [](Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
  };

  SolveResult result;
  result.scheme = PricingScheme(instance.edge_count());
  result.revenue = 0;
  const ClassifiedInstance classes = classify(instance, options.k);
  result.report.k = classes.k;
  result.report.levels = classes.level_count();

  for (int l = 0; l < classes.level_count(); ++l) {
    const auto class_started = Clock::now();
    ClassReport rep;
    rep.level = l + 1;
    PricingScheme glued(instance.edge_count());
    const auto& entries = classes.levels[static_cast<std::size_t>(l)];
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
      const ClassEntry& entry = entries[idx];
      if (entry.separated_customers.empty()) continue;
      rep.customers += static_cast<int>(entry.separated_customers.size());
      const Instance sub = restrict_instance(instance, entry.subtree, entry.separated_customers);
      SolverConfig cfg = options.solver;
      cfg.seed = mix_seed(options.solver.seed, static_cast<std::uint64_t>(l), idx);
      const DecompositionResult solved = solve_decomposition(sub, entry.decomposition, mode, cfg);
      for (EdgeId e = 0; e < sub.edge_count(); ++e) {
        glued.set_price(entry.subtree.parent_edge[static_cast<std::size_t>(e)], solved.scheme.price(e));
      }
      rep.sub_revenue += solved.revenue;
      rep.guesses_examined += solved.guesses_examined;
      rep.outcomes_examined += solved.outcomes_examined;
      rep.fallback_used = rep.fallback_used || solved.fallback_used;
    }
    rep.revenue = evaluate_revenue(instance, glued).total;
    rep.millis = millis_since(class_started);
    result.report.classes.push_back(std::move(rep));
    result.class_schemes.push_back(std::move(glued));
  }

  if (!classes.terminal_single_edge_customers.empty()) {
    const auto class_started = Clock::now();
    ClassReport rep;
    rep.terminal = true;
    PricingScheme glued(instance.edge_count());
    for (const auto& [edge, customers] : classes.terminal_single_edge_customers) {
      std::vector<Rational> budgets;
      for (int c : customers) budgets.push_back(instance.customer(c).budget);
      const SingleEdgePrice best = single_edge_pricing(budgets);
      glued.set_price(edge, best.price);
      rep.sub_revenue += best.revenue;
      rep.customers += static_cast<int>(customers.size());
    }
    rep.revenue = evaluate_revenue(instance, glued).total;
    rep.millis = millis_since(class_started);
    result.report.classes.push_back(std::move(rep));
    result.class_schemes.push_back(std::move(glued));
  }

  for (std::size_t c = 0; c < result.report.classes.size(); ++c) {
    if (result.report.chosen_class == -1 || result.report.classes[c].revenue > result.revenue) {
      result.report.chosen_class = static_cast<int>(c);
      result.revenue = result.report.classes[c].revenue;
      result.scheme = result.class_schemes[c];
    }
  }
  result.report.total_millis = millis_since(started);
  return result;
}

nlohmann::json to_json(const SolveReport& report, bool include_timing) {
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    const ClassReport& rep = report.classes[c];
    nlohmann::json item = {
        {"index", c},
        {"kind", rep.terminal ? "terminal" : "level"},
        {"customers", rep.customers},
        {"revenue", to_string(rep.revenue)},
        {"revenue_decimal", to_decimal(rep.revenue)},
        {"sub_revenue", to_string(rep.sub_revenue)},
        {"guesses_examined", rep.guesses_examined},
        {"outcomes_examined", rep.outcomes_examined},
        {"fallback", rep.fallback_used},
    };
    if (!rep.terminal) item["level"] = rep.level;
    if (include_timing) item["millis"] = rep.millis;
    classes.push_back(std::move(item));
  }
  nlohmann::json out = {{"k", report.k},
                        {"levels", report.levels},
                        {"chosen_class", report.chosen_class},
                        {"classes", std::move(classes)}};
  if (include_timing) out["total_millis"] = report.total_millis;
  return out;
}

}  // namespace tollbooth
