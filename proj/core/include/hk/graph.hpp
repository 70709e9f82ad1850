#pragma once

#include <cstdint>
#include <vector>

#include "hk/state.hpp"

namespace hk {

/// Communication graph of a configuration: agents i and j are adjacent iff
/// their squared distance is <= 1, so every vertex carries a self-loop and
/// the degree counts it. Adjacency is stored dense and symmetric together
/// with the connected-component partition.
struct CommGraph {
  int n = 0;
  std::vector<std::uint8_t> adj;             // n*n, row-major
  std::vector<int> degrees;                  // row sums, >= 1
  std::vector<int> component_of;             // component id per vertex
  std::vector<std::vector<int>> components;  // partition of [0, n)

  bool adjacent(int i, int j) const {
    return adj[static_cast<std::size_t>(i) * n + j] != 0;
  }
  int component_count() const { return static_cast<int>(components.size()); }

  /// Graphs compare equal iff they have identical adjacency.
  bool operator==(const CommGraph& o) const { return n == o.n && adj == o.adj; }
};

/// Builds the communication graph. Distances are compared via squared norms
/// against 1; no square roots are taken. Components come from BFS.
CommGraph build_graph(const OpinionState& x);

/// Completes degrees and components from an already-filled adjacency matrix.
/// Shared by the float and exact-rational graph builders.
void finalize_graph(CommGraph& g);

/// Adjacency rows exploded into index lists, for BFS-style traversals.
std::vector<std::vector<int>> neighbor_lists(const CommGraph& g);

}  // namespace hk
