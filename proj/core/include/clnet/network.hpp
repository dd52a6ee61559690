#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clnet/common.hpp"

namespace clnet {

using Edge = std::pair<NodeId, NodeId>;

struct ChannelGain {
  enum class Kind { deterministic, gaussian };
  Kind kind = Kind::deterministic;
  int n = 1;          // deterministic: shift gain n <= q
  std::string label;  // gaussian: opaque symbol "h:<label>"

  static ChannelGain det(int n) { return {Kind::deterministic, n, {}}; }
  static ChannelGain gauss(std::string label) { return {Kind::gaussian, 0, std::move(label)}; }
  bool operator==(const ChannelGain&) const = default;
};

// Generators tag their output so bounds can be matched structurally.
struct FamilyTag {
  enum class Kind { none, k22k, folded_single, folded_two_layer, nested, random };
  Kind kind = Kind::none;
  int k = 0;
  int m = 0;  // folded chains; nested: cross-copy fan-out
  int l = 0;  // nested depth, or k22k middle-layer count
  double p = 0;            // random: edge probability
  std::uint64_t seed = 0;  // random: generator seed
  bool operator==(const FamilyTag&) const = default;
};

const char* family_name(FamilyTag::Kind k);

struct Subgraph {
  std::set<NodeId> nodes;
  std::set<Edge> edges;
  bool empty() const { return nodes.empty(); }
};

struct Degrees {
  std::vector<int> in;
  std::vector<int> out;
  int d_max = 0;
};

class LayeredNetwork {
 public:
  const std::vector<std::vector<NodeId>>& layers() const { return layers_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::map<Edge, ChannelGain>& gains() const { return gains_; }
  int num_pairs() const { return static_cast<int>(layers_.front().size()); }
  int num_nodes() const { return static_cast<int>(layer_of_.size()); }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  int q() const { return q_; }

  NodeId source(PairId i) const { return layers_.front().at(i - 1); }
  NodeId destination(PairId i) const { return layers_.back().at(i - 1); }
  int layer_of(NodeId v) const { return layer_of_.at(v); }
  const std::vector<NodeId>& in(NodeId v) const { return in_.at(v); }
  const std::vector<NodeId>& out(NodeId v) const { return out_.at(v); }
  bool has_edge(NodeId a, NodeId b) const { return edges_.count({a, b}) != 0; }
  ChannelGain gain(const Edge& e) const;  // missing entries default to n = 1

  const std::string& name(NodeId v) const { return names_.at(v); }
  std::optional<NodeId> find(const std::string& name) const;

  const FamilyTag& family() const { return family_; }
  void set_family(FamilyTag t) { family_ = t; }
  void set_names(std::vector<std::string> names);

  // Per-pair reachability caches (computed once at construction).
  bool reaches(NodeId from, NodeId to) const;

 private:
  friend LayeredNetwork build_network(std::vector<std::vector<NodeId>>, std::set<Edge>,
                                      std::map<Edge, ChannelGain>, int);
  std::vector<std::vector<NodeId>> layers_;
  std::set<Edge> edges_;
  std::map<Edge, ChannelGain> gains_;
  std::vector<int> layer_of_;
  std::vector<std::vector<NodeId>> in_, out_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::string> names_;
  FamilyTag family_;
  int q_ = 1;
};

// Node IDs must be exactly 0..N-1, each in one layer. The order within the
// first and last layers defines pair numbering: layers[0][i-1] is S_i.
// q = 0 means "max deterministic gain, at least 1".
LayeredNetwork build_network(std::vector<std::vector<NodeId>> layers, std::set<Edge> edges,
                             std::map<Edge, ChannelGain> gains = {}, int q = 0);

std::vector<std::vector<NodeId>> routes(const LayeredNetwork& net, PairId src, PairId dst);
Subgraph induced_subgraph(const LayeredNetwork& net, PairId src, PairId dst);
std::set<PairId> pair_index_set(const LayeredNetwork& net, NodeId v);
Degrees degrees(const LayeredNetwork& net);
// Bipartite route-adjacency graph as the set of (i, j) with a route S_i -> D_j.
std::set<std::pair<PairId, PairId>> route_adjacency_graph(const LayeredNetwork& net);
bool non_interfering(const LayeredNetwork& net, PairId i, PairId j);
bool has_cross_path(const LayeredNetwork& net);

// Descriptor files (JSON; grammar in README).
LayeredNetwork parse_network(const std::string& text);
std::string write_network(const LayeredNetwork& net);
LayeredNetwork load_network(const std::string& path);

}  // namespace clnet
