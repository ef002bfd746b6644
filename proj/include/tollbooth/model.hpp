#pragma once

// Instance representation, unique tree paths and revenue evaluation.

#include <span>
#include <vector>

#include "tollbooth/rational.hpp"

namespace tollbooth {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
};

// An undirected tree. Edge ids are positions in the edge list. Validated on
// construction: connected, acyclic, no self-loops, no duplicate edges.
class Tree {
 public:
  struct Incidence {
    Vertex neighbor;
    EdgeId edge;
  };

  Tree() : Tree(1, {}) {}
  Tree(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  bool valid_vertex(Vertex v) const { return v >= 0 && v < vertex_count_; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

  // Incidences sorted by edge id.
  std::span<const Incidence> neighbors(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }

  // The endpoint of e that is not v.
  Vertex other_end(EdgeId e, Vertex v) const {
    const Edge& ed = edge(e);
    return ed.u == v ? ed.v : ed.u;
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

// A tree rooted at some vertex, for repeated path queries.
class RootedTree {
 public:
  RootedTree(const Tree& tree, Vertex root);

  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
  EdgeId parent_edge(Vertex v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  int depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }
  // Vertices in breadth-first order from the root.
  const std::vector<Vertex>& order() const { return order_; }

  std::vector<Vertex> path_vertices(Vertex u, Vertex v) const;
  std::vector<EdgeId> path_edges(Vertex u, Vertex v) const;

 private:
  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<int> depth_;
  std::vector<Vertex> order_;
};

// Edges of the unique u-v path, ordered from u. Empty when u == v.
std::vector<EdgeId> tree_path(const Tree& tree, Vertex u, Vertex v);

// Vertices of the unique u-v path, u first and v last.
std::vector<Vertex> tree_path_vertices(const Tree& tree, Vertex u, Vertex v);

struct Customer {
  Vertex s = 0;
  Vertex t = 0;
  Rational budget;
};

// A tree plus single-minded path customers. Paths are computed once.
class Instance {
 public:
  Instance() = default;
  Instance(Tree tree, std::vector<Customer> customers);

  const Tree& tree() const { return tree_; }
  const std::vector<Customer>& customers() const { return customers_; }
  const Customer& customer(int i) const { return customers_.at(static_cast<std::size_t>(i)); }
  int customer_count() const { return static_cast<int>(customers_.size()); }
  int edge_count() const { return tree_.edge_count(); }

  // P_i as edges ordered from s_i, and as vertices s_i..t_i.
  const std::vector<EdgeId>& path(int i) const { return paths_[static_cast<std::size_t>(i)]; }
  const std::vector<Vertex>& path_vertices(int i) const {
    return path_vertices_[static_cast<std::size_t>(i)];
  }

  // Largest budget, 0 when there are no customers.
  Rational max_budget() const;

 private:
  Tree tree_;
  std::vector<Customer> customers_;
  std::vector<std::vector<EdgeId>> paths_;
  std::vector<std::vector<Vertex>> path_vertices_;
};

// Non-negative exact price per edge; unset edges default to 0.
class PricingScheme {
 public:
  PricingScheme() = default;
  explicit PricingScheme(int edge_count) : prices_(static_cast<std::size_t>(edge_count)) {}
  explicit PricingScheme(std::vector<Rational> prices);

  int size() const { return static_cast<int>(prices_.size()); }
  const Rational& price(EdgeId e) const { return prices_.at(static_cast<std::size_t>(e)); }
  void set_price(EdgeId e, Rational value);
  const std::vector<Rational>& prices() const { return prices_; }

  Rational path_price(std::span<const EdgeId> path) const;

  friend bool operator==(const PricingScheme&, const PricingScheme&) = default;

 private:
  std::vector<Rational> prices_;
};

struct RevenueResult {
  Rational total;
  std::vector<Rational> per_customer;
};

// A customer pays her path price when it does not exceed her budget.
RevenueResult evaluate_revenue(const Instance& instance, const PricingScheme& scheme);

// Customer i's payment under the scheme (0 when over budget).
Rational customer_revenue(const Instance& instance, const PricingScheme& scheme, int i);

// Prices of the three parts of P_i relative to a vertex set: from s_i to the
// nearest member, from t_i to the nearest member, and the middle remainder.
struct RevenueBreakdown {
  Rational r_s;
  Rational r_t;
  Rational r_m;

  Rational total() const { return r_s + r_t + r_m; }
};

// Membership mask over the vertices of a tree.
std::vector<char> vertex_mask(int vertex_count, std::span<const Vertex> vertices);

// Throws ValidationError when P_i visits no vertex of the set.
RevenueBreakdown revenue_breakdown(const Instance& instance, const PricingScheme& scheme,
                                   std::span<const Vertex> vertices, int customer);
RevenueBreakdown revenue_breakdown(const Instance& instance, const PricingScheme& scheme,
                                   const std::vector<char>& mask, int customer);

// Revenue attributed to the end parts and to the middle part, summed over the
// purchasing customers only.
struct SplitRevenue {
  Rational ends;
  Rational middle;
};
SplitRevenue split_revenue(const Instance& instance, const PricingScheme& scheme,
                           std::span<const Vertex> vertices);

// The subtree induced by a connected edge subset, re-indexed locally. Local
// vertex ids follow increasing parent ids; local edge ids follow the order of
// the given edge list.
struct Subtree {
  Tree tree;
  std::vector<Vertex> parent_vertex;  // ascending
  std::vector<EdgeId> parent_edge;

  // -1 when the parent vertex is not part of the subtree.
  Vertex local_vertex(Vertex parent) const;
};

Subtree induced_subtree(const Tree& tree, std::span<const EdgeId> edges);

// The given customers of `parent` re-expressed on the subtree. Each customer's
// path must lie inside it.
Instance restrict_instance(const Instance& parent, const Subtree& subtree,
                           std::span<const int> customer_indices);

}  // namespace tollbooth
