#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clnet/network.hpp"

namespace clnet {

struct ExpandedNode {
  NodeId base = 0;
  PairId pair = 0;
  auto operator<=>(const ExpandedNode&) const = default;
};

// Route-expanded graph. Nodes are indexed 0..size()-1 in (layer, base, pair)
// order; every index-based API below refers to that order.
class RouteExpandedGraph {
 public:
  int size() const { return static_cast<int>(nodes_.size()); }
  int num_pairs() const { return num_pairs_; }
  int num_layers() const { return num_layers_; }
  const ExpandedNode& node(int x) const { return nodes_.at(x); }
  int layer(int x) const { return layer_.at(x); }
  std::optional<int> index(NodeId base, PairId pair) const;

  // All expanded nodes whose base has an edge into this node's base.
  const std::vector<int>& in(int x) const { return in_.at(x); }
  const std::vector<int>& out(int x) const { return out_.at(x); }
  // Members of the super-node that holds x (including x), ordered by pair.
  const std::vector<int>& members(int x) const { return members_.at(nodes_.at(x).base); }
  const std::map<NodeId, std::vector<int>>& supernodes() const { return members_; }

  bool is_source(int x) const { return layer_[x] == 0; }
  bool is_destination(int x) const { return layer_[x] == num_layers_ - 1; }
  const std::vector<PairId>& unroutable_pairs() const { return unroutable_; }
  bool all_routable() const { return unroutable_.empty(); }

  std::string label(int x) const;  // "base-name:pair"
  const std::vector<std::string>& base_names() const { return names_; }

 private:
  friend RouteExpandedGraph expand(const LayeredNetwork& net);
  std::vector<ExpandedNode> nodes_;
  std::vector<int> layer_;
  std::vector<std::vector<int>> in_, out_;
  std::map<NodeId, std::vector<int>> members_;
  std::map<ExpandedNode, int> index_;
  std::vector<PairId> unroutable_;
  std::vector<std::string> names_;
  int num_pairs_ = 0;
  int num_layers_ = 0;
};

RouteExpandedGraph expand(const LayeredNetwork& net);

// N_{i,j}: in-neighbors carrying the same pair ID.
std::vector<int> pair_neighbors(const RouteExpandedGraph& g, int x);

// Text dump: "node <base>:<pair>@<layer>" lines, then "edge a -> b" lines.
std::string dump_expanded(const RouteExpandedGraph& g);

}  // namespace clnet
