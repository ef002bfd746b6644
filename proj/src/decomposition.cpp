#include "tollbooth/decomposition.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "tollbooth/errors.hpp"

namespace tollbooth {

Decomposition make_decomposition(const Tree& tree, std::vector<std::vector<EdgeId>> subtrees) {
  Decomposition d;
  d.owner.assign(static_cast<std::size_t>(tree.edge_count()), -1);
  for (std::size_t j = 0; j < subtrees.size(); ++j) {
    auto& part = subtrees[j];
    if (part.empty()) throw ValidationError("decomposition has an empty subtree");
    std::sort(part.begin(), part.end());
    for (EdgeId e : part) {
      if (e < 0 || e >= tree.edge_count()) throw ValidationError("subtree edge out of range");
      if (d.owner[static_cast<std::size_t>(e)] != -1) {
        throw ValidationError("edge " + std::to_string(e) + " is in two subtrees");
      }
      d.owner[static_cast<std::size_t>(e)] = static_cast<int>(j);
    }
    // connectivity: a forest with |V| - |E| == 1 components
    std::vector<Vertex> verts;
    for (EdgeId e : part) {
      verts.push_back(tree.edge(e).u);
      verts.push_back(tree.edge(e).v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() != part.size() + 1) {
      throw ValidationError("subtree " + std::to_string(j) + " is not connected");
    }
  }
  for (std::size_t e = 0; e < d.owner.size(); ++e) {
    if (d.owner[e] == -1) throw ValidationError("edge " + std::to_string(e) + " is uncovered");
  }
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    int first_owner = -1;
    for (const auto& inc : tree.neighbors(v)) {
      const int o = d.owner[static_cast<std::size_t>(inc.edge)];
      if (first_owner == -1) {
        first_owner = o;
      } else if (o != first_owner) {
        d.border_vertices.push_back(v);
        break;
      }
    }
  }
  d.subtrees = std::move(subtrees);
  return d;
}

namespace {

// Edges of the component of T - v that contains `start`, plus the edge (v, start).
void collect_branch(const Tree& tree, Vertex v, Vertex start, EdgeId via,
                    std::vector<EdgeId>& out) {
  out.push_back(via);
  std::vector<std::pair<Vertex, Vertex>> stack{{start, v}};
  while (!stack.empty()) {
    auto [x, from] = stack.back();
    stack.pop_back();
    for (const auto& inc : tree.neighbors(x)) {
      if (inc.neighbor == from) continue;
      out.push_back(inc.edge);
      stack.emplace_back(inc.neighbor, x);
    }
  }
}

}  // namespace

CentroidSplit centroid_split(const Tree& tree) {
  const int total = tree.edge_count();
  if (total < 2) throw ValidationError("centroid split needs at least 2 edges");
  const int lo = (total + 2) / 3;
  const int hi = 2 * total / 3;

  const RootedTree rooted(tree, 0);
  std::vector<int> below(static_cast<std::size_t>(tree.vertex_count()), 0);
  const auto& order = rooted.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (v != rooted.root()) below[static_cast<std::size_t>(rooted.parent(v))] += below[static_cast<std::size_t>(v)] + 1;
  }

  struct Branch {
    int size;
    Vertex neighbor;
    EdgeId edge;
  };
  std::vector<Branch> branches;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    branches.clear();
    for (const auto& inc : tree.neighbors(v)) {
      const int size = inc.neighbor == rooted.parent(v)
                           ? total - below[static_cast<std::size_t>(v)]
                           : below[static_cast<std::size_t>(inc.neighbor)] + 1;
      branches.push_back({size, inc.neighbor, inc.edge});
    }
    if (branches.size() < 2) continue;
    std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
      return a.size != b.size ? a.size > b.size : a.neighbor < b.neighbor;
    });
    // Greedy packing succeeds exactly when the largest branch fits.
    if (branches.front().size > hi) continue;
    int filled = 0;
    std::vector<char> in_first(branches.size(), 0);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      if (filled + branches[b].size <= hi) {
        filled += branches[b].size;
        in_first[b] = 1;
      }
    }
    if (filled < lo || total - filled < lo || total - filled > hi) continue;
    CentroidSplit split;
    split.shared = v;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      collect_branch(tree, v, branches[b].neighbor, branches[b].edge,
                     in_first[b] ? split.first : split.second);
    }
    std::sort(split.first.begin(), split.first.end());
    std::sort(split.second.begin(), split.second.end());
    return split;
  }
  throw InvariantViolation("no centroid split found");
}

Decomposition balanced_k_decomposition(const Tree& tree, int k, DecompositionTrace* trace) {
  const int total = tree.edge_count();
  if (k < 1) throw ValidationError("k must be positive");
  if (total < k) {
    throw ValidationError("cannot split " + std::to_string(total) + " edges into " +
                          std::to_string(k) + " subtrees");
  }
  std::vector<std::vector<EdgeId>> parts(1);
  for (EdgeId e = 0; e < total; ++e) parts[0].push_back(e);
  auto record = [&] {
    if (trace == nullptr) return;
    std::vector<int> sizes;
    for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
    trace->part_sizes.push_back(std::move(sizes));
  };
  record();
  for (int step = 1; step < k; ++step) {
    std::size_t largest = 0;
    for (std::size_t j = 1; j < parts.size(); ++j) {
      if (parts[j].size() > parts[largest].size()) largest = j;
    }
    const Subtree sub = induced_subtree(tree, parts[largest]);
    const CentroidSplit split = centroid_split(sub.tree);
    std::vector<EdgeId> first;
    std::vector<EdgeId> second;
    for (EdgeId e : split.first) first.push_back(sub.parent_edge[static_cast<std::size_t>(e)]);
    for (EdgeId e : split.second) second.push_back(sub.parent_edge[static_cast<std::size_t>(e)]);
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    parts[largest] = std::move(first);
    parts.push_back(std::move(second));
    record();
  }
  return make_decomposition(tree, std::move(parts));
}

Decomposition trivial_decomposition(const Tree& tree) {
  std::vector<std::vector<EdgeId>> parts;
  parts.reserve(static_cast<std::size_t>(tree.edge_count()));
  for (EdgeId e = 0; e < tree.edge_count(); ++e) parts.push_back({e});
  return make_decomposition(tree, std::move(parts));
}

SkeletonInfo extract_skeleton(const Tree& tree, const Decomposition& decomposition) {
  SkeletonInfo info;
  const auto& border = decomposition.border_vertices;
  if (border.empty()) return info;
  if (border.size() == 1) {
    info.skeleton_vertices = border;
    info.core = border;
    return info;
  }

  const auto n = static_cast<std::size_t>(tree.vertex_count());
  const std::vector<char> is_border = vertex_mask(tree.vertex_count(), border);
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    degree[static_cast<std::size_t>(v)] = tree.degree(v);
    if (degree[static_cast<std::size_t>(v)] <= 1 && !is_border[static_cast<std::size_t>(v)]) {
      leaves.push_back(v);
    }
  }
  // Strip non-border leaves until every leaf is a border vertex.
  while (!leaves.empty()) {
    const Vertex v = leaves.back();
    leaves.pop_back();
    alive[static_cast<std::size_t>(v)] = 0;
    for (const auto& inc : tree.neighbors(v)) {
      const auto w = static_cast<std::size_t>(inc.neighbor);
      if (!alive[w]) continue;
      if (--degree[w] == 1 && !is_border[w]) leaves.push_back(inc.neighbor);
    }
  }

  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(e);
    if (alive[static_cast<std::size_t>(ed.u)] && alive[static_cast<std::size_t>(ed.v)]) {
      info.skeleton_edges.push_back(e);
    }
  }
  std::vector<int> skeleton_degree(n, 0);
  for (EdgeId e : info.skeleton_edges) {
    ++skeleton_degree[static_cast<std::size_t>(tree.edge(e).u)];
    ++skeleton_degree[static_cast<std::size_t>(tree.edge(e).v)];
  }
  std::vector<char> is_core(n, 0);
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    const auto vi = static_cast<std::size_t>(v);
    if (!alive[vi]) continue;
    info.skeleton_vertices.push_back(v);
    if (is_border[vi]) {
      is_core[vi] = 1;
      info.core.push_back(v);
    } else if (skeleton_degree[vi] >= 3) {
      is_core[vi] = 1;
      info.junctions.push_back(v);
      info.core.push_back(v);
    }
  }

  std::vector<char> in_skeleton(static_cast<std::size_t>(tree.edge_count()), 0);
  for (EdgeId e : info.skeleton_edges) in_skeleton[static_cast<std::size_t>(e)] = 1;
  std::vector<char> used(static_cast<std::size_t>(tree.edge_count()), 0);
  for (Vertex c : info.core) {
    for (const auto& start : tree.neighbors(c)) {
      const auto se = static_cast<std::size_t>(start.edge);
      if (!in_skeleton[se] || used[se]) continue;
      std::vector<Vertex> seq{c};
      std::vector<EdgeId> seq_edges;
      Vertex cur = c;
      EdgeId via = start.edge;
      while (true) {
        used[static_cast<std::size_t>(via)] = 1;
        seq_edges.push_back(via);
        cur = tree.other_end(via, cur);
        seq.push_back(cur);
        if (is_core[static_cast<std::size_t>(cur)]) break;
        // interior vertices have skeleton degree 2
        EdgeId next = -1;
        for (const auto& inc : tree.neighbors(cur)) {
          if (in_skeleton[static_cast<std::size_t>(inc.edge)] &&
              !used[static_cast<std::size_t>(inc.edge)]) {
            next = inc.edge;
          }
        }
        if (next == -1) throw InvariantViolation("segment walk ended at a non-core vertex");
        via = next;
      }
      info.segments.push_back(std::move(seq));
      info.segment_edges.push_back(std::move(seq_edges));
    }
  }
  return info;
}

std::string to_dot(const Tree& tree, const Decomposition& decomposition) {
  static constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                             "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  constexpr std::size_t kColors = sizeof(kPalette) / sizeof(kPalette[0]);
  const std::vector<char> is_border =
      vertex_mask(tree.vertex_count(), decomposition.border_vertices);
  std::ostringstream out;
  out << "graph decomposition {\n";
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    out << "  " << v;
    if (is_border[static_cast<std::size_t>(v)]) out << " [style=filled, fillcolor=black, fontcolor=white]";
    out << ";\n";
  }
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    const int part = decomposition.owner[static_cast<std::size_t>(e)];
    out << "  " << tree.edge(e).u << " -- " << tree.edge(e).v << " [label=\"e" << e << "/T"
        << part << "\", color=\"" << kPalette[static_cast<std::size_t>(part) % kColors]
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tollbooth
