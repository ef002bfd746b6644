#include "tollbooth/model.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "tollbooth/errors.hpp"

namespace tollbooth {

Tree::Tree(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw ValidationError("tree needs at least one vertex");
  if (edge_count() != vertex_count_ - 1) {
    throw ValidationError("tree with " + std::to_string(vertex_count_) + " vertices needs " +
                          std::to_string(vertex_count_ - 1) + " edges, got " +
                          std::to_string(edge_count()));
  }
  adjacency_.resize(static_cast<std::size_t>(vertex_count_));
  std::set<std::pair<Vertex, Vertex>> seen;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (!valid_vertex(ed.u) || !valid_vertex(ed.v)) {
      throw ValidationError("edge " + std::to_string(e) + " has an invalid endpoint");
    }
    if (ed.u == ed.v) throw ValidationError("edge " + std::to_string(e) + " is a self-loop");
    if (!seen.emplace(std::min(ed.u, ed.v), std::max(ed.u, ed.v)).second) {
      throw ValidationError("edge " + std::to_string(e) + " is a duplicate");
    }
    adjacency_[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
    adjacency_[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
  }
  // |E| = |V| - 1 plus connectivity implies acyclic.
  std::vector<char> reached(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<Vertex> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : neighbors(v)) {
      if (!reached[static_cast<std::size_t>(inc.neighbor)]) {
        reached[static_cast<std::size_t>(inc.neighbor)] = 1;
        ++count;
        stack.push_back(inc.neighbor);
      }
    }
  }
  if (count != vertex_count_) throw ValidationError("tree is not connected");
}

RootedTree::RootedTree(const Tree& tree, Vertex root) : root_(root) {
  if (!tree.valid_vertex(root)) throw ValidationError("invalid root vertex");
  const auto n = static_cast<std::size_t>(tree.vertex_count());
  parent_.assign(n, -1);
  parent_edge_.assign(n, -1);
  depth_.assign(n, 0);
  order_.reserve(n);
  order_.push_back(root);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Vertex v = order_[head];
    for (const Tree::Incidence& inc : tree.neighbors(v)) {
      if (inc.edge == parent_edge_[static_cast<std::size_t>(v)]) continue;
      parent_[static_cast<std::size_t>(inc.neighbor)] = v;
      parent_edge_[static_cast<std::size_t>(inc.neighbor)] = inc.edge;
      depth_[static_cast<std::size_t>(inc.neighbor)] = depth(v) + 1;
      order_.push_back(inc.neighbor);
    }
  }
}

std::vector<Vertex> RootedTree::path_vertices(Vertex u, Vertex v) const {
  std::vector<Vertex> from_u;
  std::vector<Vertex> from_v;
  while (depth(u) > depth(v)) {
    from_u.push_back(u);
    u = parent(u);
  }
  while (depth(v) > depth(u)) {
    from_v.push_back(v);
    v = parent(v);
  }
  while (u != v) {
    from_u.push_back(u);
    from_v.push_back(v);
    u = parent(u);
    v = parent(v);
  }
  from_u.push_back(u);
  from_u.insert(from_u.end(), from_v.rbegin(), from_v.rend());
  return from_u;
}

std::vector<EdgeId> RootedTree::path_edges(Vertex u, Vertex v) const {
  std::vector<EdgeId> from_u;
  std::vector<EdgeId> from_v;
  while (depth(u) > depth(v)) {
    from_u.push_back(parent_edge(u));
    u = parent(u);
  }
  while (depth(v) > depth(u)) {
    from_v.push_back(parent_edge(v));
    v = parent(v);
  }
  while (u != v) {
    from_u.push_back(parent_edge(u));
    from_v.push_back(parent_edge(v));
    u = parent(u);
    v = parent(v);
  }
  from_u.insert(from_u.end(), from_v.rbegin(), from_v.rend());
  return from_u;
}

std::vector<EdgeId> tree_path(const Tree& tree, Vertex u, Vertex v) {
  if (!tree.valid_vertex(u) || !tree.valid_vertex(v)) throw ValidationError("invalid vertex id");
  return RootedTree(tree, u).path_edges(u, v);
}

std::vector<Vertex> tree_path_vertices(const Tree& tree, Vertex u, Vertex v) {
  if (!tree.valid_vertex(u) || !tree.valid_vertex(v)) throw ValidationError("invalid vertex id");
  return RootedTree(tree, u).path_vertices(u, v);
}

Instance::Instance(Tree tree, std::vector<Customer> customers)
    : tree_(std::move(tree)), customers_(std::move(customers)) {
  const RootedTree rooted(tree_, 0);
  paths_.reserve(customers_.size());
  path_vertices_.reserve(customers_.size());
  for (std::size_t i = 0; i < customers_.size(); ++i) {
    Customer& c = customers_[i];
    c.budget.canonicalize();
    if (!tree_.valid_vertex(c.s) || !tree_.valid_vertex(c.t)) {
      throw ValidationError("customer " + std::to_string(i) + " has an invalid endpoint");
    }
    if (c.s == c.t) throw ValidationError("customer " + std::to_string(i) + " has s == t");
    if (sgn(c.budget) < 0) {
      throw ValidationError("customer " + std::to_string(i) + " has a negative budget");
    }
    paths_.push_back(rooted.path_edges(c.s, c.t));
    path_vertices_.push_back(rooted.path_vertices(c.s, c.t));
  }
}

Rational Instance::max_budget() const {
  Rational best = 0;
  for (const Customer& c : customers_) best = std::max(best, c.budget);
  return best;
}

PricingScheme::PricingScheme(std::vector<Rational> prices) : prices_(std::move(prices)) {
  for (std::size_t e = 0; e < prices_.size(); ++e) {
    prices_[e].canonicalize();
    if (sgn(prices_[e]) < 0) throw ValidationError("negative price on edge " + std::to_string(e));
  }
}

void PricingScheme::set_price(EdgeId e, Rational value) {
  if (sgn(value) < 0) throw ValidationError("negative price on edge " + std::to_string(e));
  value.canonicalize();
  prices_.at(static_cast<std::size_t>(e)) = std::move(value);
}

Rational PricingScheme::path_price(std::span<const EdgeId> path) const {
  Rational sum = 0;
  for (EdgeId e : path) sum += price(e);
  return sum;
}

namespace {

void check_scheme(const Instance& instance, const PricingScheme& scheme) {
  if (scheme.size() != instance.edge_count()) {
    throw ValidationError("pricing scheme covers " + std::to_string(scheme.size()) +
                          " edges, tree has " + std::to_string(instance.edge_count()));
  }
}

}  // namespace

Rational customer_revenue(const Instance& instance, const PricingScheme& scheme, int i) {
  Rational price = scheme.path_price(instance.path(i));
  return price <= instance.customer(i).budget ? price : Rational(0);
}

RevenueResult evaluate_revenue(const Instance& instance, const PricingScheme& scheme) {
  check_scheme(instance, scheme);
  RevenueResult result;
  result.total = 0;
  result.per_customer.reserve(static_cast<std::size_t>(instance.customer_count()));
  for (int i = 0; i < instance.customer_count(); ++i) {
    result.per_customer.push_back(customer_revenue(instance, scheme, i));
    result.total += result.per_customer.back();
  }
  return result;
}

std::vector<char> vertex_mask(int vertex_count, std::span<const Vertex> vertices) {
  std::vector<char> mask(static_cast<std::size_t>(vertex_count), 0);
  for (Vertex v : vertices) {
    if (v < 0 || v >= vertex_count) throw ValidationError("invalid vertex id in set");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

RevenueBreakdown revenue_breakdown(const Instance& instance, const PricingScheme& scheme,
                                   std::span<const Vertex> vertices, int customer) {
  return revenue_breakdown(instance, scheme,
                           vertex_mask(instance.tree().vertex_count(), vertices), customer);
}

RevenueBreakdown revenue_breakdown(const Instance& instance, const PricingScheme& scheme,
                                   const std::vector<char>& mask, int customer) {
  check_scheme(instance, scheme);
  const auto& verts = instance.path_vertices(customer);
  const auto& edges = instance.path(customer);
  std::size_t first = verts.size();
  std::size_t last = 0;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (mask[static_cast<std::size_t>(verts[j])]) {
      first = std::min(first, j);
      last = j;
    }
  }
  if (first == verts.size()) {
    throw ValidationError("customer " + std::to_string(customer) +
                          " path does not meet the vertex set");
  }
  // edge j joins verts[j] and verts[j + 1]
  RevenueBreakdown out;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const Rational& p = scheme.price(edges[j]);
    if (j < first) {
      out.r_s += p;
    } else if (j >= last) {
      out.r_t += p;
    } else {
      out.r_m += p;
    }
  }
  return out;
}

SplitRevenue split_revenue(const Instance& instance, const PricingScheme& scheme,
                           std::span<const Vertex> vertices) {
  const auto mask = vertex_mask(instance.tree().vertex_count(), vertices);
  SplitRevenue out;
  for (int i = 0; i < instance.customer_count(); ++i) {
    RevenueBreakdown parts = revenue_breakdown(instance, scheme, mask, i);
    if (parts.total() <= instance.customer(i).budget) {
      out.ends += parts.r_s + parts.r_t;
      out.middle += parts.r_m;
    }
  }
  return out;
}

Vertex Subtree::local_vertex(Vertex parent) const {
  const auto it = std::lower_bound(parent_vertex.begin(), parent_vertex.end(), parent);
  if (it == parent_vertex.end() || *it != parent) return -1;
  return static_cast<Vertex>(it - parent_vertex.begin());
}

Subtree induced_subtree(const Tree& tree, std::span<const EdgeId> edges) {
  Subtree out;
  std::vector<Vertex> verts;
  verts.reserve(2 * edges.size());
  for (EdgeId e : edges) {
    verts.push_back(tree.edge(e).u);
    verts.push_back(tree.edge(e).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) verts.push_back(0);
  out.parent_vertex = std::move(verts);
  std::vector<Edge> local_edges;
  local_edges.reserve(edges.size());
  for (EdgeId e : edges) {
    local_edges.push_back({out.local_vertex(tree.edge(e).u), out.local_vertex(tree.edge(e).v)});
  }
  out.tree = Tree(static_cast<int>(out.parent_vertex.size()), std::move(local_edges));
  out.parent_edge.assign(edges.begin(), edges.end());
  return out;
}

Instance restrict_instance(const Instance& parent, const Subtree& subtree,
                           std::span<const int> customer_indices) {
  std::vector<Customer> customers;
  customers.reserve(customer_indices.size());
  for (int i : customer_indices) {
    const Customer& c = parent.customer(i);
    const Vertex s = subtree.local_vertex(c.s);
    const Vertex t = subtree.local_vertex(c.t);
    if (s < 0 || t < 0) {
      throw ValidationError("customer " + std::to_string(i) + " is not inside the subtree");
    }
    customers.push_back({s, t, c.budget});
  }
  return Instance(subtree.tree, std::move(customers));
}

}  // namespace tollbooth
