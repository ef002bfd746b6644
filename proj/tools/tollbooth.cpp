// Command-line front end: instance generation, solving, evaluation, the exact
// oracle and experiment suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tollbooth/bench.hpp"
#include "tollbooth/classification.hpp"
#include "tollbooth/errors.hpp"
#include "tollbooth/io.hpp"
#include "tollbooth/oracle.hpp"

namespace tb = tollbooth;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    tb::write_text_file(path, text);
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json prices_json(const tb::PricingScheme& scheme) {
  json out = tb::to_json(scheme);
  json decimals = json::array();
  for (const auto& p : scheme.prices()) decimals.push_back(tb::to_decimal(p));
  out["prices_decimal"] = std::move(decimals);
  return out;
}

struct GenArgs {
  int edges = 1;
  int customers = 0;
  int budget_max = 10;
  bool rational = false;
  int denominator = 4;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  tb::BudgetDistribution dist;
  dist.kind = a.rational ? tb::BudgetKind::kRational : tb::BudgetKind::kInteger;
  dist.max = a.budget_max;
  dist.denominator = a.denominator;
  const tb::Instance instance = tb::generate_instance(a.edges, a.customers, dist, a.seed);
  emit(a.out, dump(tb::to_json(instance)));
  return 0;
}

struct SolveArgs {
  std::string input;
  std::string mode = "derandomized";
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::string config;
  std::string out;
  std::string report;
  std::string dot;
  bool no_fallback = false;
  bool no_timing = false;
  bool quiet = false;
};

void apply_solver_config(const json& doc, tb::SolverConfig& cfg) {
  try {
    cfg.max_guesses = doc.value("max_guesses", cfg.max_guesses);
    cfg.max_choices = doc.value("max_choices", cfg.max_choices);
    cfg.fallback_trials = doc.value("fallback_trials", cfg.fallback_trials);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.allow_fallback = doc.value("allow_fallback", cfg.allow_fallback);
  } catch (const json::exception& ex) {
    throw tb::ValidationError(std::string("malformed solver config: ") + ex.what());
  }
  if (cfg.fallback_trials < 1) throw tb::ValidationError("fallback_trials must be at least 1");
}

int run_solve(const SolveArgs& a) {
  const tb::Instance instance = tb::load_instance(a.input);
  tb::FullSolveOptions options;
  if (!a.config.empty()) apply_solver_config(tb::read_json_file(a.config), options.solver);
  if (a.seed) options.solver.seed = *a.seed;
  if (a.no_fallback) options.solver.allow_fallback = false;
  options.k = a.k;
  if (!a.quiet) {
    options.solver.progress = [](std::string_view line) { std::cerr << line << '\n'; };
  }
  const tb::Mode mode = a.mode == "randomized" ? tb::Mode::kRandomized : tb::Mode::kDerandomized;

  const tb::SolveResult result = tb::solve_full(instance, mode, options);

  json report = {{"mode", a.mode},
                 {"seed", options.solver.seed},
                 {"revenue", tb::to_string(result.revenue)},
                 {"revenue_decimal", tb::to_decimal(result.revenue)},
                 {"report", tb::to_json(result.report, !a.no_timing)}};
  emit(a.out, dump(prices_json(result.scheme)));
  if (!a.report.empty()) {
    emit(a.report, dump(report));
  } else if (!a.out.empty() && a.out != "-") {
    std::cout << dump(report);
  }

  if (!a.dot.empty()) {
    const tb::ClassifiedInstance classes = tb::classify(instance, a.k);
    if (classes.levels.empty()) {
      emit(a.dot, tb::to_dot(instance.tree(), tb::trivial_decomposition(instance.tree())));
    } else {
      const tb::ClassEntry& top = classes.levels.front().front();
      emit(a.dot, tb::to_dot(top.subtree.tree, top.decomposition));
    }
  }
  return 0;
}

int run_eval(const std::string& input, const std::string& prices) {
  const tb::Instance instance = tb::load_instance(input);
  const tb::PricingScheme scheme = tb::load_scheme(prices, instance.edge_count());
  const tb::RevenueResult revenue = tb::evaluate_revenue(instance, scheme);
  json per = json::array();
  for (const auto& r : revenue.per_customer) per.push_back(tb::to_string(r));
  std::cout << dump({{"revenue", tb::to_string(revenue.total)},
                     {"revenue_decimal", tb::to_decimal(revenue.total)},
                     {"per_customer", std::move(per)}});
  return 0;
}

int run_oracle(const std::string& input, const tb::OracleLimits& limits) {
  const tb::Instance instance = tb::load_instance(input);
  const tb::OracleResult opt = tb::brute_force_opt(instance, limits);
  json out = prices_json(opt.opt_scheme);
  out["opt"] = tb::to_string(opt.opt_revenue);
  out["opt_decimal"] = tb::to_decimal(opt.opt_revenue);
  out["winner_set"] = opt.winner_set;
  std::cout << dump(out);
  return 0;
}

int run_bench(const std::string& config_path, const std::string& csv) {
  tb::ExperimentConfig config = tb::experiment_config_from_json(tb::read_json_file(config_path));
  if (!csv.empty()) config.output = csv;
  const auto rows = tb::run_suite(config);
  std::ostringstream text;
  tb::write_csv(text, rows);
  emit(config.output, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revenue-maximizing edge pricing on trees"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--edges", gen.edges, "Tree edges")->required();
  gen_cmd->add_option("--customers", gen.customers, "Customers")->required();
  gen_cmd->add_option("--budget-max", gen.budget_max, "Largest budget");
  gen_cmd->add_flag("--rational-budgets", gen.rational, "Budgets on a 1/denominator grid");
  gen_cmd->add_option("--denominator", gen.denominator, "Denominator for rational budgets");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate revenue-maximizing prices");
  solve_cmd->add_option("--input", solve.input, "Instance JSON")->required();
  solve_cmd->add_option("--mode", solve.mode, "derandomized or randomized")
      ->check(CLI::IsMember({"derandomized", "randomized"}));
  solve_cmd->add_option("--seed", solve.seed, "RNG seed (overrides config)");
  solve_cmd->add_option("--k", solve.k, "Decomposition fan-out (default from tree size)")
      ->check(CLI::Range(2, 1 << 20));
  solve_cmd->add_option("--config", solve.config,
                        "JSON with max_guesses, max_choices, fallback_trials, seed");
  solve_cmd->add_option("--out", solve.out, "Prices JSON (stdout if omitted)");
  solve_cmd->add_option("--report", solve.report, "Report JSON (stdout if omitted and --out given)");
  solve_cmd->add_option("--emit-dot", solve.dot, "Graphviz file for the top-level decomposition");
  solve_cmd->add_flag("--no-fallback", solve.no_fallback, "Fail with exit 3 instead of sampling past caps");
  solve_cmd->add_flag("--no-timing", solve.no_timing, "Omit timing fields from the report");
  solve_cmd->add_flag("--quiet", solve.quiet, "No progress lines on stderr");

  std::string eval_input;
  std::string eval_prices;
  auto* eval_cmd = app.add_subcommand("eval", "Revenue of a pricing");
  eval_cmd->add_option("--input", eval_input, "Instance JSON")->required();
  eval_cmd->add_option("--prices", eval_prices, "Prices JSON")->required();

  std::string oracle_input;
  tb::OracleLimits limits;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum for tiny instances");
  oracle_cmd->add_option("--input", oracle_input, "Instance JSON")->required();
  oracle_cmd->add_option("--max-edges", limits.max_edges, "Edge limit");
  oracle_cmd->add_option("--max-customers", limits.max_customers, "Customer limit");

  std::string bench_config;
  std::string bench_csv;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment suite");
  bench_cmd->add_option("--config", bench_config, "Experiment JSON")->required();
  bench_cmd->add_option("--csv", bench_csv, "CSV output (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*eval_cmd) return run_eval(eval_input, eval_prices);
    if (*oracle_cmd) return run_oracle(oracle_input, limits);
    if (*bench_cmd) return run_bench(bench_config, bench_csv);
  } catch (const tb::ValidationError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitValidation;
  } catch (const tb::CapExceededError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitCap;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
