#include "tollbooth/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "tollbooth/errors.hpp"

namespace tollbooth {

Instance generate_instance(int m, int n, const BudgetDistribution& budgets, std::uint64_t seed) {
  if (m < 1) throw ValidationError("generated trees need at least one edge");
  if (n < 0) throw ValidationError("customer count must be non-negative");
  if (budgets.max < 1 || budgets.denominator < 1) throw ValidationError("bad budget distribution");
  const int vertices = m + 1;
  const long long pairs = static_cast<long long>(vertices) * (vertices - 1) / 2;
  if (n > pairs) throw ValidationError("more customers than distinct endpoint pairs");

  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::vector<Edge> edges;
  if (vertices == 2) {
    edges.push_back({0, 1});
  } else {
    std::vector<int> sequence(static_cast<std::size_t>(vertices - 2));
    for (int& x : sequence) x = uniform(0, vertices - 1);
    std::vector<int> degree(static_cast<std::size_t>(vertices), 1);
    for (int x : sequence) ++degree[static_cast<std::size_t>(x)];
    std::set<int> leaves;
    for (int v = 0; v < vertices; ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
    }
    for (int x : sequence) {
      const int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({leaf, x});
      if (--degree[static_cast<std::size_t>(x)] == 1) leaves.insert(x);
    }
    const int a = *leaves.begin();
    const int b = *std::next(leaves.begin());
    edges.push_back({a, b});
  }

  std::vector<Customer> customers;
  std::set<std::pair<int, int>> used;
  while (static_cast<int>(customers.size()) < n) {
    int s = uniform(0, vertices - 1);
    int t = uniform(0, vertices - 2);
    if (t >= s) ++t;
    if (!used.emplace(std::min(s, t), std::max(s, t)).second) continue;
    Rational budget;
    if (budgets.kind == BudgetKind::kInteger) {
      budget = uniform(1, budgets.max);
    } else {
      budget = Rational(uniform(1, budgets.max * budgets.denominator), budgets.denominator);
      budget.canonicalize();
    }
    customers.push_back({s, t, budget});
  }
  return Instance(Tree(vertices, std::move(edges)), std::move(customers));
}

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw ValidationError("trials must be at least 1");
  if (config.sizes.empty()) throw ValidationError("sizes must not be empty");
  for (int m : config.sizes) {
    if (m < 1) throw ValidationError("sizes must be positive");
  }
  if (config.customers < 0) throw ValidationError("customers must be non-negative");
  if (config.oracle) {
    const int largest = *std::max_element(config.sizes.begin(), config.sizes.end());
    if (largest > config.oracle_limits.max_edges || config.customers > config.oracle_limits.max_customers) {
      throw ValidationError("oracle requested beyond its size limits");
    }
  }
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  ExperimentConfig config;
  try {
    config.sizes = doc.at("sizes").get<std::vector<int>>();
    config.customers = doc.value("customers", config.customers);
    config.trials = doc.value("trials", config.trials);
    config.seed = doc.value("seed", config.seed);
    config.oracle = doc.value("oracle", config.oracle);
    config.output = doc.value("output", config.output);
    const std::string mode = doc.value("mode", std::string("derandomized"));
    if (mode == "derandomized") {
      config.mode = Mode::kDerandomized;
    } else if (mode == "randomized") {
      config.mode = Mode::kRandomized;
    } else {
      throw ValidationError("mode must be randomized or derandomized");
    }
    if (doc.contains("budget")) {
      const auto& b = doc.at("budget");
      const std::string kind = b.value("kind", std::string("integer"));
      if (kind == "integer") {
        config.budgets.kind = BudgetKind::kInteger;
      } else if (kind == "rational") {
        config.budgets.kind = BudgetKind::kRational;
      } else {
        throw ValidationError("budget kind must be integer or rational");
      }
      config.budgets.max = b.value("max", config.budgets.max);
      config.budgets.denominator = b.value("denominator", config.budgets.denominator);
    }
    config.solver.max_guesses = doc.value("max_guesses", config.solver.max_guesses);
    config.solver.max_choices = doc.value("max_choices", config.solver.max_choices);
    config.solver.fallback_trials = doc.value("fallback_trials", config.solver.fallback_trials);
    config.oracle_limits.max_edges = doc.value("oracle_max_edges", config.oracle_limits.max_edges);
    config.oracle_limits.max_customers =
        doc.value("oracle_max_customers", config.oracle_limits.max_customers);
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed experiment config: ") + ex.what());
  }
  validate(config);
  return config;
}

std::vector<TrialRow> run_suite(const ExperimentConfig& config) {
  validate(config);
  std::vector<TrialRow> rows;
  int trial = 0;
  for (int m : config.sizes) {
    const long long pairs = static_cast<long long>(m + 1) * m / 2;
    const int n = static_cast<int>(std::min<long long>(config.customers, pairs));
    for (int t = 0; t < config.trials; ++t, ++trial) {
      TrialRow row;
      row.trial = trial;
      row.m = m;
      row.n = n;
      row.seed = mix_seed(config.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t));
      const Instance instance = generate_instance(m, n, config.budgets, row.seed);
      const auto started = std::chrono::steady_clock::now();
      FullSolveOptions options;
      options.solver = config.solver;
      options.solver.seed = row.seed;
      const SolveResult solved = solve_full(instance, config.mode, options);
      row.wall_millis =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      row.k = solved.report.k;
      row.levels = solved.report.levels;
      row.revenue = solved.revenue;
      for (const ClassReport& c : solved.report.classes) {
        row.guesses += c.guesses_examined;
        row.fallback = row.fallback || c.fallback_used;
      }
      if (config.oracle) row.opt = brute_force_opt(instance, config.oracle_limits).opt_revenue;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kCsvHeader << '\n';
  for (const TrialRow& r : rows) {
    out << r.trial << ',' << r.m << ',' << r.n << ',' << r.k << ',' << r.levels << ','
        << to_string(r.revenue) << ',';
    if (r.opt) {
      out << to_string(*r.opt) << ',';
      if (sgn(*r.opt) > 0) {
        const Rational ratio = r.revenue / *r.opt;
        out << to_string(ratio) << ',' << to_decimal(ratio);
      } else {
        out << "1,1.000000";
      }
    } else {
      out << ",,";
    }
    std::ostringstream wall;
    wall << std::fixed << std::setprecision(3) << r.wall_millis;
    out << ',' << r.guesses << ',' << (r.fallback ? 1 : 0) << ',' << wall.str() << ',' << r.seed
        << '\n';
  }
}

}  // namespace tollbooth
