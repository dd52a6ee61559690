#include "clnet/expansion.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace clnet {

std::optional<int> RouteExpandedGraph::index(NodeId base, PairId pair) const {
  auto it = index_.find({base, pair});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string RouteExpandedGraph::label(int x) const {
  return names_.at(nodes_.at(x).base) + ":" + std::to_string(nodes_.at(x).pair);
}

RouteExpandedGraph expand(const LayeredNetwork& net) {
  RouteExpandedGraph g;
  g.num_pairs_ = net.num_pairs();
  g.num_layers_ = net.num_layers();
  for (int v = 0; v < net.num_nodes(); ++v) g.names_.push_back(net.name(v));

  std::vector<std::tuple<int, NodeId, PairId>> order;
  for (int v = 0; v < net.num_nodes(); ++v)
    for (PairId j : pair_index_set(net, v)) order.emplace_back(net.layer_of(v), v, j);
  std::sort(order.begin(), order.end());

  for (const auto& [layer, v, j] : order) {
    int x = static_cast<int>(g.nodes_.size());
    g.nodes_.push_back({v, j});
    g.layer_.push_back(layer);
    g.index_[{v, j}] = x;
    g.members_[v].push_back(x);
  }
  g.in_.assign(g.nodes_.size(), {});
  g.out_.assign(g.nodes_.size(), {});
  // Every base edge connects every pair of duplicates.
  for (int x = 0; x < g.size(); ++x) {
    for (NodeId w : net.out(g.nodes_[x].base)) {
      auto it = g.members_.find(w);
      if (it == g.members_.end()) continue;
      for (int y : it->second) {
        g.out_[x].push_back(y);
        g.in_[y].push_back(x);
      }
    }
  }
  for (auto& v : g.in_) std::sort(v.begin(), v.end());
  for (auto& v : g.out_) std::sort(v.begin(), v.end());
  for (PairId j = 1; j <= net.num_pairs(); ++j)
    if (!g.index(net.source(j), j)) g.unroutable_.push_back(j);
  return g;
}

std::vector<int> pair_neighbors(const RouteExpandedGraph& g, int x) {
  std::vector<int> out;
  for (int y : g.in(x))
    if (g.node(y).pair == g.node(x).pair) out.push_back(y);
  return out;
}

std::string dump_expanded(const RouteExpandedGraph& g) {
  std::ostringstream os;
  for (int x = 0; x < g.size(); ++x) os << "node " << g.label(x) << "@" << g.layer(x) + 1 << "\n";
  for (int x = 0; x < g.size(); ++x)
    for (int y : g.out(x)) os << "edge " << g.label(x) << " -> " << g.label(y) << "\n";
  return os.str();
}

}  // namespace clnet
