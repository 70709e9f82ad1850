#include "hk/graph.hpp"

#include <queue>

namespace hk {

void finalize_graph(CommGraph& g) {
  const int n = g.n;
  g.degrees.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const std::uint8_t* row = g.adj.data() + static_cast<std::size_t>(i) * n;
    int deg = 0;
    for (int j = 0; j < n; ++j) deg += row[j];
    g.degrees[i] = deg;
  }

  g.component_of.assign(n, -1);
  g.components.clear();
  std::queue<int> queue;
  for (int start = 0; start < n; ++start) {
    if (g.component_of[start] >= 0) continue;
    const int id = static_cast<int>(g.components.size());
    g.components.emplace_back();
    g.component_of[start] = id;
    queue.push(start);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      g.components[id].push_back(v);
      const std::uint8_t* row = g.adj.data() + static_cast<std::size_t>(v) * n;
      for (int j = 0; j < n; ++j) {
        if (row[j] && g.component_of[j] < 0) {
          g.component_of[j] = id;
          queue.push(j);
        }
      }
    }
  }
}

CommGraph build_graph(const OpinionState& x) {
  CommGraph g;
  g.n = x.n;
  g.adj.assign(static_cast<std::size_t>(x.n) * x.n, 0);
  for (int i = 0; i < x.n; ++i) {
    g.adj[static_cast<std::size_t>(i) * x.n + i] = 1;
    for (int j = i + 1; j < x.n; ++j) {
      // squared distances, compared against 1 -- no square roots
      const std::uint8_t edge = dist2(x, i, j) <= 1.0 ? 1 : 0;
      g.adj[static_cast<std::size_t>(i) * x.n + j] = edge;
      g.adj[static_cast<std::size_t>(j) * x.n + i] = edge;
    }
  }
  finalize_graph(g);
  return g;
}

std::vector<std::vector<int>> neighbor_lists(const CommGraph& g) {
  std::vector<std::vector<int>> nbrs(g.n);
  for (int i = 0; i < g.n; ++i) {
    nbrs[i].reserve(g.degrees[i]);
    const std::uint8_t* row = g.adj.data() + static_cast<std::size_t>(i) * g.n;
    for (int j = 0; j < g.n; ++j) {
      if (row[j]) nbrs[i].push_back(j);
    }
  }
  return nbrs;
}

}  // namespace hk
