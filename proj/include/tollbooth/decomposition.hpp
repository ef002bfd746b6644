#pragma once

// Edge-disjoint tree decompositions: centroid splits, almost balanced
// k-decompositions, trivial decompositions, and the skeleton spanned by the
// border vertices of a decomposition.

#include <string>
#include <vector>

#include "tollbooth/model.hpp"

namespace tollbooth {

// k edge-disjoint connected subtrees covering every edge of a tree.
struct Decomposition {
  // Each subtree as a sorted list of edge ids of the decomposed tree.
  std::vector<std::vector<EdgeId>> subtrees;
  // Vertices incident to edges of at least two subtrees, sorted.
  std::vector<Vertex> border_vertices;
  // owner[e] = index of the subtree holding edge e.
  std::vector<int> owner;

  int k() const { return static_cast<int>(subtrees.size()); }
};

// Builds owner and border_vertices from the subtree edge lists. Throws
// ValidationError unless the lists partition the tree's edges into connected
// non-empty parts.
Decomposition make_decomposition(const Tree& tree, std::vector<std::vector<EdgeId>> subtrees);

// 3k*size >= |E| and k*size <= 3|E|.
constexpr bool within_balance_window(long long size, long long total, long long k) {
  return 3 * k * size >= total && k * size <= 3 * total;
}

struct CentroidSplit {
  std::vector<EdgeId> first;
  std::vector<EdgeId> second;
  Vertex shared = -1;
};

// Two connected edge sets sharing one vertex, each holding between
// ceil(|E|/3) and floor(2|E|/3) edges. The shared vertex is the smallest id
// admitting such a split; branches at it are packed greedily, largest first,
// into `first`. Requires |E| >= 2.
CentroidSplit centroid_split(const Tree& tree);

// Part sizes before the first split and after every split, in part order.
struct DecompositionTrace {
  std::vector<std::vector<int>> part_sizes;
};

// k - 1 centroid splits, each applied to a largest part (lowest index on ties).
// Requires 1 <= k <= |E|.
Decomposition balanced_k_decomposition(const Tree& tree, int k,
                                       DecompositionTrace* trace = nullptr);

// One subtree per edge.
Decomposition trivial_decomposition(const Tree& tree);

struct SkeletonInfo {
  std::vector<EdgeId> skeleton_edges;     // sorted
  std::vector<Vertex> skeleton_vertices;  // sorted; {b} when there is one border vertex
  std::vector<Vertex> junctions;          // sorted
  std::vector<Vertex> core;               // border vertices and junctions, sorted
  // Each segment as its vertex sequence v_1..v_l and its edges (v_j, v_{j+1}).
  std::vector<std::vector<Vertex>> segments;
  std::vector<std::vector<EdgeId>> segment_edges;

  bool has_edges() const { return !skeleton_edges.empty(); }
};

SkeletonInfo extract_skeleton(const Tree& tree, const Decomposition& decomposition);

// Graphviz rendering with one color per subtree and border vertices filled.
std::string to_dot(const Tree& tree, const Decomposition& decomposition);

}  // namespace tollbooth
