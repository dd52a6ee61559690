#include "graph_color.hpp"

#include <algorithm>

namespace clnet::detail {

namespace {

struct Solver {
  const std::vector<std::vector<int>>& adj;
  int n;
  int k = 0;
  std::vector<int> color;

  // Uncolored vertex with most distinct neighbor colors, then highest degree.
  int pick() const {
    int best = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      std::vector<bool> used(k, false);
      int sat = 0;
      for (int u : adj[v])
        if (color[u] >= 0 && !used[color[u]]) used[color[u]] = true, ++sat;
      int deg = static_cast<int>(adj[v].size());
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) best = v, best_sat = sat, best_deg = deg;
    }
    return best;
  }

  bool solve(int colored, int used_colors) {
    if (colored == n) return true;
    int v = pick();
    std::vector<bool> blocked(k, false);
    for (int u : adj[v])
      if (color[u] >= 0) blocked[color[u]] = true;
    // A fresh color is interchangeable with any other fresh one.
    int limit = std::min(k, used_colors + 1);
    for (int c = 0; c < limit; ++c) {
      if (blocked[c]) continue;
      color[v] = c;
      if (solve(colored + 1, std::max(used_colors, c + 1))) return true;
    }
    color[v] = -1;
    return false;
  }
};

int greedy_clique(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size()), best = n > 0 ? 1 : 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> clique{s};
    std::vector<int> cand(adj[s]);
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return adj[a].size() > adj[b].size(); });
    for (int v : cand) {
      bool ok = std::all_of(clique.begin(), clique.end(), [&](int u) {
        return std::find(adj[v].begin(), adj[v].end(), u) != adj[v].end();
      });
      if (ok) clique.push_back(v);
    }
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return best;
}

}  // namespace

std::vector<int> exact_coloring(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return {};
  for (int k = greedy_clique(adj); k <= n; ++k) {
    Solver s{adj, n, k, std::vector<int>(n, -1)};
    if (s.solve(0, 0)) return s.color;
  }
  return {};  // unreachable: n colors always suffice
}

}  // namespace clnet::detail
