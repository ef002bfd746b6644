#include "tollbooth/decomp_solver.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "tollbooth/errors.hpp"
#include "tollbooth/single_source.hpp"

namespace tollbooth {

const Rational& GammaGrid::floor(const Rational& x) const {
  auto it = std::upper_bound(values.begin(), values.end(), x);
  if (it == values.begin()) throw ValidationError("grid floor of a negative value");
  return *std::prev(it);
}

bool GammaGrid::contains(const Rational& x) const {
  return std::binary_search(values.begin(), values.end(), x);
}

GammaGrid build_gamma_grid(int n, int m, const Rational& b_max) {
  if (n < 1 || m < 1) throw ValidationError("gamma grid needs n >= 1 and m >= 1");
  if (sgn(b_max) < 0) throw ValidationError("gamma grid needs b_max >= 0");
  GammaGrid grid;
  grid.b_max = b_max;
  grid.n = n;
  grid.m = m;
  grid.values.emplace_back(0);
  if (sgn(b_max) == 0) return grid;
  const mpz_class span = mpz_class(4) * n * m * m;
  const auto top_exponent = mpz_sizeinbase(span.get_mpz_t(), 2) - 1;  // floor(log2)
  Rational value = b_max / (mpz_class(4) * n * m);
  for (std::size_t l = 0; l <= top_exponent; ++l) {
    grid.values.push_back(value);
    value *= 2;
  }
  return grid;
}

bool is_separated(std::span<const EdgeId> path, const Decomposition& decomposition) {
  if (path.empty()) return false;
  const int first = decomposition.owner.at(static_cast<std::size_t>(path.front()));
  return std::any_of(path.begin(), path.end(), [&](EdgeId e) {
    return decomposition.owner.at(static_cast<std::size_t>(e)) != first;
  });
}

namespace {

constexpr int kSelectorCount = 4;
constexpr std::uint64_t kProgressBatch = 4096;

void require_separated(const Instance& sub, const Decomposition& decomposition) {
  if (static_cast<int>(decomposition.owner.size()) != sub.edge_count()) {
    throw ValidationError("decomposition does not match the instance tree");
  }
  for (int i = 0; i < sub.customer_count(); ++i) {
    if (!is_separated(sub.path(i), decomposition)) {
      throw ValidationError("customer " + std::to_string(i) + " is not separated");
    }
  }
}

// Saturating power, for sample-space sizes.
std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

// Advances a mixed-radix counter; false after the last value.
bool next_digits(std::vector<std::size_t>& digits, std::size_t radix) {
  for (auto& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

// ---------------------------------------------------------------- Scenario I

struct Scenario1Plan {
  // Prices on subtree j's non-skeleton edges when j is active.
  std::vector<PricingScheme> subtree_schemes;
  // Per customer: (subtree, price of her path inside it) for nonzero parts.
  std::vector<std::vector<std::pair<int, Rational>>> contributions;
};

Scenario1Plan plan_scenario1(const Instance& sub, const Decomposition& decomposition,
                             const SkeletonInfo& skeleton) {
  const Tree& tree = sub.tree();
  const std::vector<char> on_skeleton = vertex_mask(tree.vertex_count(), skeleton.skeleton_vertices);
  std::vector<char> skeleton_edge(static_cast<std::size_t>(tree.edge_count()), 0);
  for (EdgeId e : skeleton.skeleton_edges) skeleton_edge[static_cast<std::size_t>(e)] = 1;

  // Subtree of each vertex that is off the skeleton (such vertices are in exactly one).
  std::vector<int> home(static_cast<std::size_t>(tree.vertex_count()), -1);
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (!on_skeleton[static_cast<std::size_t>(v)] && tree.degree(v) > 0) {
      home[static_cast<std::size_t>(v)] =
          decomposition.owner[static_cast<std::size_t>(tree.neighbors(v).front().edge)];
    }
  }

  Scenario1Plan plan;
  for (int j = 0; j < decomposition.k(); ++j) {
    const auto& part = decomposition.subtrees[static_cast<std::size_t>(j)];
    PricingScheme scheme(tree.edge_count());
    // Contract the skeleton portion of T_j into local vertex 0.
    std::vector<Vertex> local(static_cast<std::size_t>(tree.vertex_count()), -1);
    bool has_root = false;
    std::vector<Vertex> off;
    for (EdgeId e : part) {
      for (Vertex x : {tree.edge(e).u, tree.edge(e).v}) {
        if (on_skeleton[static_cast<std::size_t>(x)]) {
          has_root = true;
        } else {
          off.push_back(x);
        }
      }
    }
    std::sort(off.begin(), off.end());
    off.erase(std::unique(off.begin(), off.end()), off.end());
    SingleSourceInstance ss;
    for (std::size_t a = 0; a < off.size(); ++a) local[static_cast<std::size_t>(off[a])] = static_cast<Vertex>(a + 1);
    std::vector<Edge> edges;
    std::vector<EdgeId> edge_origin;
    for (EdgeId e : part) {
      if (skeleton_edge[static_cast<std::size_t>(e)]) continue;
      auto map = [&](Vertex x) { return on_skeleton[static_cast<std::size_t>(x)] ? 0 : local[static_cast<std::size_t>(x)]; };
      edges.push_back({map(tree.edge(e).u), map(tree.edge(e).v)});
      edge_origin.push_back(e);
    }
    for (int i = 0; i < sub.customer_count(); ++i) {
      const Customer& c = sub.customer(i);
      for (Vertex x : {c.s, c.t}) {
        if (home[static_cast<std::size_t>(x)] == j) ss.customers.push_back({local[static_cast<std::size_t>(x)], c.budget});
      }
    }
    if (!has_root) {
      if (!ss.customers.empty()) throw InvariantViolation("subtree without a skeleton vertex has customers");
      plan.subtree_schemes.push_back(std::move(scheme));
      continue;
    }
    ss.tree = Tree(static_cast<int>(off.size()) + 1, std::move(edges));
    ss.root = 0;
    const SingleSourceResult solved = solve_single_source(ss);
    for (std::size_t a = 0; a < edge_origin.size(); ++a) {
      scheme.set_price(edge_origin[a], solved.scheme.price(static_cast<EdgeId>(a)));
    }
    plan.subtree_schemes.push_back(std::move(scheme));
  }

  plan.contributions.resize(static_cast<std::size_t>(sub.customer_count()));
  for (int i = 0; i < sub.customer_count(); ++i) {
    std::vector<Rational> per(static_cast<std::size_t>(decomposition.k()));
    for (EdgeId e : sub.path(i)) {
      if (skeleton_edge[static_cast<std::size_t>(e)]) continue;
      const int j = decomposition.owner[static_cast<std::size_t>(e)];
      per[static_cast<std::size_t>(j)] += plan.subtree_schemes[static_cast<std::size_t>(j)].price(e);
    }
    for (int j = 0; j < decomposition.k(); ++j) {
      if (sgn(per[static_cast<std::size_t>(j)]) != 0) {
        plan.contributions[static_cast<std::size_t>(i)].emplace_back(j, per[static_cast<std::size_t>(j)]);
      }
    }
  }
  return plan;
}

Rational scenario1_outcome_revenue(const Instance& sub, const Scenario1Plan& plan,
                                   const CoinVector& active) {
  Rational total = 0;
  Rational price;
  for (int i = 0; i < sub.customer_count(); ++i) {
    price = 0;
    for (const auto& [j, value] : plan.contributions[static_cast<std::size_t>(i)]) {
      if (active[static_cast<std::size_t>(j)]) price += value;
    }
    if (price <= sub.customer(i).budget) total += price;
  }
  return total;
}

PricingScheme scenario1_scheme(const Instance& sub, const Scenario1Plan& plan,
                               const CoinVector& active) {
  PricingScheme scheme(sub.edge_count());
  for (std::size_t j = 0; j < plan.subtree_schemes.size(); ++j) {
    if (!active[j]) continue;
    for (EdgeId e = 0; e < sub.edge_count(); ++e) {
      const Rational& p = plan.subtree_schemes[j].price(e);
      if (sgn(p) != 0) scheme.set_price(e, p);
    }
  }
  return scheme;
}

CoinVector coins_from_mask(std::uint64_t mask, int k) {
  CoinVector coins(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) coins[static_cast<std::size_t>(j)] = static_cast<char>((mask >> j) & 1U);
  return coins;
}

// --------------------------------------------------------------- Scenario II

struct PartialSegment {
  int segment;
  int position;     // index of the customer's endpoint in the segment's vertex list
  bool exits_left;  // leaves the segment through its first vertex
};

struct RelocatedCustomer {
  std::vector<int> complete;
  std::vector<PartialSegment> partial;
};

struct Scenario2Plan {
  std::vector<RelocatedCustomer> customers;
  // Partial-segment users per segment: (customer, index into her partial list).
  std::vector<std::vector<std::pair<int, int>>> users;
};

Scenario2Plan plan_scenario2(const Instance& sub, const SkeletonInfo& skeleton) {
  const Tree& tree = sub.tree();
  const std::vector<char> on_skeleton = vertex_mask(tree.vertex_count(), skeleton.skeleton_vertices);
  const std::vector<char> is_core = vertex_mask(tree.vertex_count(), skeleton.core);
  // edge -> (segment, index along it)
  std::vector<std::pair<int, int>> where(static_cast<std::size_t>(tree.edge_count()), {-1, -1});
  std::vector<int> position(static_cast<std::size_t>(tree.vertex_count()), -1);
  for (std::size_t s = 0; s < skeleton.segments.size(); ++s) {
    const auto& edges = skeleton.segment_edges[s];
    for (std::size_t a = 0; a < edges.size(); ++a) {
      where[static_cast<std::size_t>(edges[a])] = {static_cast<int>(s), static_cast<int>(a)};
    }
    const auto& verts = skeleton.segments[s];
    for (std::size_t a = 1; a + 1 < verts.size(); ++a) position[static_cast<std::size_t>(verts[a])] = static_cast<int>(a);
  }

  Scenario2Plan plan;
  plan.customers.resize(static_cast<std::size_t>(sub.customer_count()));
  plan.users.resize(skeleton.segments.size());
  for (int i = 0; i < sub.customer_count(); ++i) {
    const auto& pv = sub.path_vertices(i);
    const auto& pe = sub.path(i);
    std::size_t first = pv.size();
    std::size_t last = 0;
    for (std::size_t a = 0; a < pv.size(); ++a) {
      if (on_skeleton[static_cast<std::size_t>(pv[a])]) {
        first = std::min(first, a);
        last = a;
      }
    }
    if (first == pv.size()) throw ValidationError("customer path misses the skeleton");
    auto& out = plan.customers[static_cast<std::size_t>(i)];
    // Relocated path pv[first..last]: group its edges into runs per segment.
    std::size_t a = first;
    while (a < last) {
      const int seg = where[static_cast<std::size_t>(pe[a])].first;
      if (seg < 0) throw InvariantViolation("relocated path leaves the skeleton");
      std::size_t b = a;
      while (b + 1 < last && where[static_cast<std::size_t>(pe[b + 1])].first == seg) ++b;
      const std::size_t run = b - a + 1;
      const auto& seg_edges = skeleton.segment_edges[static_cast<std::size_t>(seg)];
      if (run == seg_edges.size()) {
        out.complete.push_back(seg);
      } else {
        const Vertex head = pv[a];
        const Vertex tail = pv[b + 1];
        const bool head_interior = !is_core[static_cast<std::size_t>(head)];
        const Vertex endpoint = head_interior ? head : tail;
        const Vertex exit = head_interior ? tail : head;
        if (is_core[static_cast<std::size_t>(endpoint)] || !is_core[static_cast<std::size_t>(exit)]) {
          throw InvariantViolation("partial segment run without exactly one core end");
        }
        const bool left = exit == skeleton.segments[static_cast<std::size_t>(seg)].front();
        plan.users[static_cast<std::size_t>(seg)].emplace_back(i, static_cast<int>(out.partial.size()));
        out.partial.push_back({seg, position[static_cast<std::size_t>(endpoint)], left});
      }
      a = b + 1;
    }
  }
  return plan;
}

// Edge prices along one segment for each selector, under a fixed guess.
struct SegmentOptions {
  std::vector<std::vector<Rational>> prices;  // [selector][edge index along the segment]
};

// Sum of prices on the part of the segment between position and the exit end.
Rational partial_price(const std::vector<Rational>& prices, const PartialSegment& p) {
  Rational sum = 0;
  if (p.exits_left) {
    for (int e = 0; e < p.position; ++e) sum += prices[static_cast<std::size_t>(e)];
  } else {
    for (std::size_t e = static_cast<std::size_t>(p.position); e < prices.size(); ++e) sum += prices[e];
  }
  return sum;
}

std::vector<Rational> rooted_assignment(const Instance& sub, const Scenario2Plan& plan, int seg,
                                        std::size_t edge_count, const Rational& total,
                                        const std::vector<Rational>& residual, bool left) {
  // Path graph 0..edge_count on the segment, rooted at its first (left) or last vertex.
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < edge_count; ++e) edges.push_back({static_cast<Vertex>(e), static_cast<Vertex>(e + 1)});
  SingleSourceInstance ss;
  ss.tree = Tree(static_cast<int>(edge_count) + 1, std::move(edges));
  ss.root = left ? 0 : static_cast<Vertex>(edge_count);
  for (const auto& [i, slot] : plan.users[static_cast<std::size_t>(seg)]) {
    const PartialSegment& p = plan.customers[static_cast<std::size_t>(i)].partial[static_cast<std::size_t>(slot)];
    if (p.exits_left != left) continue;
    const Rational& rest = residual[static_cast<std::size_t>(i)];
    if (sgn(rest) < 0) continue;
    ss.customers.push_back({p.position, std::min(total, rest)});
  }
  (void)sub;
  const SingleSourceResult solved = solve_single_source(ss);
  std::vector<Rational> prices(edge_count);
  Rational used = 0;
  const std::size_t leftover_edge = left ? edge_count - 1 : 0;
  for (std::size_t e = 0; e < edge_count; ++e) {
    if (e == leftover_edge) continue;
    prices[e] = solved.scheme.price(static_cast<EdgeId>(e));
    used += prices[e];
  }
  prices[leftover_edge] = total - used;
  if (sgn(prices[leftover_edge]) < 0) {
    throw InvariantViolation("negative leftover price on segment " + std::to_string(seg));
  }
  return prices;
}

std::vector<SegmentOptions> segment_options(const Instance& sub, const SkeletonInfo& skeleton,
                                            const Scenario2Plan& plan, const SegmentGuess& guess) {
  std::vector<Rational> residual(static_cast<std::size_t>(sub.customer_count()));
  for (int i = 0; i < sub.customer_count(); ++i) {
    residual[static_cast<std::size_t>(i)] = sub.customer(i).budget;
    for (int seg : plan.customers[static_cast<std::size_t>(i)].complete) {
      residual[static_cast<std::size_t>(i)] -= guess[static_cast<std::size_t>(seg)];
    }
  }
  std::vector<SegmentOptions> out(skeleton.segments.size());
  for (std::size_t s = 0; s < skeleton.segments.size(); ++s) {
    const std::size_t len = skeleton.segment_edges[s].size();
    const Rational& total = guess[s];
    auto& opts = out[s].prices;
    opts.assign(kSelectorCount, std::vector<Rational>(len));
    opts[static_cast<std::size_t>(Selector::kFirstEdge)][0] = total;
    opts[static_cast<std::size_t>(Selector::kLastEdge)][len - 1] = total;
    opts[static_cast<std::size_t>(Selector::kLeftRooted)] =
        rooted_assignment(sub, plan, static_cast<int>(s), len, total, residual, true);
    opts[static_cast<std::size_t>(Selector::kRightRooted)] =
        rooted_assignment(sub, plan, static_cast<int>(s), len, total, residual, false);
  }
  return out;
}

// Per-customer price pieces for fast outcome evaluation under a fixed guess.
struct GuessTable {
  std::vector<Rational> base;  // complete-segment totals
  // [customer][partial slot][selector]
  std::vector<std::vector<std::array<Rational, kSelectorCount>>> partial;
};

GuessTable tabulate(const Instance& sub, const Scenario2Plan& plan, const SegmentGuess& guess,
                    const std::vector<SegmentOptions>& options) {
  GuessTable table;
  table.base.resize(static_cast<std::size_t>(sub.customer_count()));
  table.partial.resize(static_cast<std::size_t>(sub.customer_count()));
  for (int i = 0; i < sub.customer_count(); ++i) {
    const auto& rc = plan.customers[static_cast<std::size_t>(i)];
    for (int seg : rc.complete) table.base[static_cast<std::size_t>(i)] += guess[static_cast<std::size_t>(seg)];
    for (const PartialSegment& p : rc.partial) {
      std::array<Rational, kSelectorCount> row;
      for (int sel = 0; sel < kSelectorCount; ++sel) {
        row[static_cast<std::size_t>(sel)] =
            partial_price(options[static_cast<std::size_t>(p.segment)].prices[static_cast<std::size_t>(sel)], p);
      }
      table.partial[static_cast<std::size_t>(i)].push_back(std::move(row));
    }
  }
  return table;
}

Rational scenario2_outcome_revenue(const Instance& sub, const Scenario2Plan& plan,
                                   const GuessTable& table, const std::vector<std::size_t>& choice) {
  Rational total = 0;
  Rational price;
  for (int i = 0; i < sub.customer_count(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    price = table.base[ii];
    const auto& rc = plan.customers[ii];
    for (std::size_t slot = 0; slot < rc.partial.size(); ++slot) {
      price += table.partial[ii][slot][choice[static_cast<std::size_t>(rc.partial[slot].segment)]];
    }
    if (price <= sub.customer(i).budget) total += price;
  }
  return total;
}

PricingScheme scenario2_scheme(const Instance& sub, const SkeletonInfo& skeleton,
                               const std::vector<SegmentOptions>& options,
                               const std::vector<std::size_t>& choice) {
  PricingScheme scheme(sub.edge_count());
  for (std::size_t s = 0; s < skeleton.segments.size(); ++s) {
    const auto& prices = options[s].prices[choice[s]];
    for (std::size_t a = 0; a < prices.size(); ++a) scheme.set_price(skeleton.segment_edges[s][a], prices[a]);
  }
  return scheme;
}

std::vector<std::size_t> choice_digits(const AssignmentChoice& choice) {
  std::vector<std::size_t> digits;
  for (Selector s : choice) digits.push_back(static_cast<std::size_t>(s));
  return digits;
}

SegmentGuess guess_from_digits(const GammaGrid& grid, const std::vector<std::size_t>& digits) {
  SegmentGuess guess;
  for (std::size_t d : digits) guess.push_back(grid.values[d]);
  return guess;
}

void check_guess(const SkeletonInfo& skeleton, const SegmentGuess& guess) {
  if (!skeleton.has_edges()) throw ValidationError("scenario II needs a skeleton with an edge");
  if (guess.size() != skeleton.segments.size()) throw ValidationError("guess size differs from segment count");
  for (const Rational& g : guess) {
    if (sgn(g) < 0) throw ValidationError("negative segment guess");
  }
}

}  // namespace

PricingScheme scenario1(const Instance& sub, const Decomposition& decomposition,
                        const SkeletonInfo& skeleton, const CoinVector& active) {
  if (static_cast<int>(active.size()) != decomposition.k()) {
    throw ValidationError("coin vector size differs from subtree count");
  }
  require_separated(sub, decomposition);
  return scenario1_scheme(sub, plan_scenario1(sub, decomposition, skeleton), active);
}

PricingScheme scenario2(const Instance& sub, const Decomposition& decomposition,
                        const SkeletonInfo& skeleton, const SegmentGuess& guess,
                        const AssignmentChoice& choice) {
  check_guess(skeleton, guess);
  if (choice.size() != skeleton.segments.size()) throw ValidationError("choice size differs from segment count");
  require_separated(sub, decomposition);
  const Scenario2Plan plan = plan_scenario2(sub, skeleton);
  return scenario2_scheme(sub, skeleton, segment_options(sub, skeleton, plan, guess), choice_digits(choice));
}

Rational expected_revenue(const Instance& sub, const Decomposition& decomposition,
                          Scenario scenario, const SegmentGuess* guess, const SolverConfig& config) {
  require_separated(sub, decomposition);
  const SkeletonInfo skeleton = extract_skeleton(sub.tree(), decomposition);
  if (scenario == Scenario::kOne) {
    const auto k = static_cast<std::size_t>(decomposition.k());
    const std::uint64_t outcomes = checked_pow(2, k);
    if (outcomes > config.max_choices) throw CapExceededError("coin space exceeds max_choices");
    const Scenario1Plan plan = plan_scenario1(sub, decomposition, skeleton);
    Rational sum = 0;
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
      sum += scenario1_outcome_revenue(sub, plan, coins_from_mask(mask, decomposition.k()));
    }
    return sum / outcomes;
  }
  if (guess == nullptr) throw ValidationError("scenario II expectation needs a guess");
  check_guess(skeleton, *guess);
  const std::uint64_t outcomes = checked_pow(kSelectorCount, skeleton.segments.size());
  if (outcomes > config.max_choices) throw CapExceededError("choice space exceeds max_choices");
  const Scenario2Plan plan = plan_scenario2(sub, skeleton);
  const auto options = segment_options(sub, skeleton, plan, *guess);
  const GuessTable table = tabulate(sub, plan, *guess, options);
  std::vector<std::size_t> digits(skeleton.segments.size(), 0);
  Rational sum = 0;
  do {
    sum += scenario2_outcome_revenue(sub, plan, table, digits);
  } while (next_digits(digits, kSelectorCount));
  return sum / outcomes;
}

Rational best_guess_expected_revenue(const Instance& sub, const Decomposition& decomposition,
                                     const SolverConfig& config) {
  require_separated(sub, decomposition);
  const SkeletonInfo skeleton = extract_skeleton(sub.tree(), decomposition);
  if (!skeleton.has_edges() || sub.customer_count() == 0) return 0;
  const GammaGrid grid = build_gamma_grid(sub.customer_count(), sub.edge_count(), sub.max_budget());
  if (checked_pow(grid.values.size(), skeleton.segments.size()) > config.max_guesses) {
    throw CapExceededError("guess space exceeds max_guesses");
  }
  const std::uint64_t outcomes = checked_pow(kSelectorCount, skeleton.segments.size());
  if (outcomes > config.max_choices) throw CapExceededError("choice space exceeds max_choices");
  const Scenario2Plan plan = plan_scenario2(sub, skeleton);
  Rational best = 0;
  std::vector<std::size_t> guess_digits(skeleton.segments.size(), 0);
  do {
    const SegmentGuess guess = guess_from_digits(grid, guess_digits);
    const auto options = segment_options(sub, skeleton, plan, guess);
    const GuessTable table = tabulate(sub, plan, guess, options);
    std::vector<std::size_t> digits(skeleton.segments.size(), 0);
    Rational sum = 0;
    do {
      sum += scenario2_outcome_revenue(sub, plan, table, digits);
    } while (next_digits(digits, kSelectorCount));
    best = std::max(best, Rational(sum / outcomes));
  } while (next_digits(guess_digits, grid.values.size()));
  return best;
}

DecompositionResult solve_decomposition(const Instance& sub, const Decomposition& decomposition,
                                        Mode mode, const SolverConfig& config) {
  require_separated(sub, decomposition);
  DecompositionResult result;
  result.scheme = PricingScheme(sub.edge_count());
  result.revenue = 0;
  result.scenario1_revenue = 0;
  if (sub.customer_count() == 0) return result;

  std::mt19937_64 rng(config.seed);
  const SkeletonInfo skeleton = extract_skeleton(sub.tree(), decomposition);
  const int k = decomposition.k();

  // Scenario I
  const Scenario1Plan plan1 = plan_scenario1(sub, decomposition, skeleton);
  CoinVector best_coins;
  {
    std::optional<Rational> best;
    auto consider = [&](const CoinVector& coins) {
      Rational value = scenario1_outcome_revenue(sub, plan1, coins);
      ++result.outcomes_examined;
      if (!best || value > *best) {
        best = std::move(value);
        best_coins = coins;
      }
    };
    const std::uint64_t outcomes = checked_pow(2, static_cast<std::size_t>(k));
    auto random_coins = [&] {
      CoinVector coins(static_cast<std::size_t>(k));
      for (auto& c : coins) c = static_cast<char>(rng() & 1U);
      return coins;
    };
    if (mode == Mode::kRandomized) {
      consider(random_coins());
    } else if (outcomes <= config.max_choices && k < 64) {
      for (std::uint64_t mask = 0; mask < outcomes; ++mask) consider(coins_from_mask(mask, k));
    } else {
      if (!config.allow_fallback) throw CapExceededError("coin space exceeds max_choices");
      result.fallback_used = true;
      for (int t = 0; t < config.fallback_trials; ++t) consider(random_coins());
    }
    result.scenario1_revenue = *best;
  }

  // Scenario II
  std::optional<Rational> best2;
  SegmentGuess best_guess;
  std::vector<std::size_t> best_choice;
  if (skeleton.has_edges()) {
    const GammaGrid grid = build_gamma_grid(sub.customer_count(), sub.edge_count(), sub.max_budget());
    const Scenario2Plan plan2 = plan_scenario2(sub, skeleton);
    const std::size_t segments = skeleton.segments.size();
    const std::uint64_t guess_space = checked_pow(grid.values.size(), segments);
    const std::uint64_t choice_space = checked_pow(kSelectorCount, segments);
    const bool sample_guesses = guess_space > config.max_guesses;
    const bool sample_choices = mode == Mode::kDerandomized && choice_space > config.max_choices;
    if ((sample_guesses || sample_choices) && !config.allow_fallback) {
      throw CapExceededError(sample_guesses ? "guess space exceeds max_guesses"
                                            : "choice space exceeds max_choices");
    }
    result.fallback_used = result.fallback_used || sample_guesses || sample_choices;

    auto random_digits = [&](std::size_t radix) {
      std::vector<std::size_t> digits(segments);
      std::uniform_int_distribution<std::size_t> pick(0, radix - 1);
      for (auto& d : digits) d = pick(rng);
      return digits;
    };
    auto evaluate_guess = [&](const std::vector<std::size_t>& guess_digits) {
      const SegmentGuess guess = guess_from_digits(grid, guess_digits);
      const auto options = segment_options(sub, skeleton, plan2, guess);
      const GuessTable table = tabulate(sub, plan2, guess, options);
      auto consider = [&](const std::vector<std::size_t>& choice) {
        Rational value = scenario2_outcome_revenue(sub, plan2, table, choice);
        ++result.outcomes_examined;
        if (!best2 || value > *best2) {
          best2 = std::move(value);
          best_guess = guess;
          best_choice = choice;
        }
      };
      if (mode == Mode::kRandomized) {
        consider(random_digits(kSelectorCount));
      } else if (!sample_choices) {
        std::vector<std::size_t> digits(segments, 0);
        do {
          consider(digits);
        } while (next_digits(digits, kSelectorCount));
      } else {
        for (int t = 0; t < config.fallback_trials; ++t) consider(random_digits(kSelectorCount));
      }
      ++result.guesses_examined;
      if (config.progress && result.guesses_examined % kProgressBatch == 0) {
        std::ostringstream line;
        line << "scenario2: " << result.guesses_examined << "/"
             << (sample_guesses ? static_cast<std::uint64_t>(config.fallback_trials) : guess_space)
             << " guesses, best revenue " << to_string(*best2);
        config.progress(line.str());
      }
    };
    if (!sample_guesses) {
      std::vector<std::size_t> digits(segments, 0);
      do {
        evaluate_guess(digits);
      } while (next_digits(digits, grid.values.size()));
    } else {
      for (int t = 0; t < config.fallback_trials; ++t) evaluate_guess(random_digits(grid.values.size()));
    }
    result.scenario2_revenue = best2;
    if (config.progress) {
      std::ostringstream line;
      line << "scenario2: done, " << result.guesses_examined << " guesses, "
           << result.outcomes_examined << " outcomes, best revenue " << to_string(*best2)
           << (result.fallback_used ? " (sampled)" : "");
      config.progress(line.str());
    }
  }

  Rational fast;
  if (best2 && *best2 > result.scenario1_revenue) {
    result.winner = Scenario::kTwo;
    const Scenario2Plan plan2 = plan_scenario2(sub, skeleton);
    result.scheme = scenario2_scheme(sub, skeleton, segment_options(sub, skeleton, plan2, best_guess), best_choice);
    fast = *best2;
  } else {
    result.winner = Scenario::kOne;
    result.scheme = scenario1_scheme(sub, plan1, best_coins);
    fast = result.scenario1_revenue;
  }
  result.revenue = evaluate_revenue(sub, result.scheme).total;
  if (result.revenue != fast) throw InvariantViolation("outcome revenue disagrees with full evaluation");
  return result;
}

}  // namespace tollbooth
