#include "clnet/network.hpp"

#include <algorithm>
#include <sstream>

namespace clnet {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::CrossLayerEdge: return "CrossLayerEdge";
    case Errc::LayerMismatch: return "LayerMismatch";
    case Errc::DanglingGain: return "DanglingGain";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::EmptyNetwork: return "EmptyNetwork";
    case Errc::BadNodeId: return "BadNodeId";
    case Errc::GainExceedsQ: return "GainExceedsQ";
    case Errc::ParseError: return "ParseError";
    case Errc::MalformedAssignment: return "MalformedAssignment";
    case Errc::InvalidColoring: return "InvalidColoring";
    case Errc::Unroutable: return "Unroutable";
    case Errc::StrategyArity: return "StrategyArity";
    case Errc::BadPattern: return "BadPattern";
    case Errc::NotK22K: return "NotK22K";
    case Errc::BadParams: return "BadParams";
    case Errc::UnroutableAfterRetries: return "UnroutableAfterRetries";
    case Errc::NoCrossPath: return "NoCrossPath";
    case Errc::UnsupportedM: return "UnsupportedM";
  }
  return "?";
}

std::vector<int> colors_of(ColorSet s) {
  std::vector<int> out;
  for (; s; s &= s - 1) out.push_back(lowest(s));
  return out;
}

ColorSet make_set(const std::vector<int>& colors) {
  ColorSet s = 0;
  for (int c : colors) s |= bit(c);
  return s;
}

std::string format_set(ColorSet s) {
  std::string out = "{";
  bool first = true;
  for (int c : colors_of(s)) {
    if (!first) out += ',';
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

const char* family_name(FamilyTag::Kind k) {
  switch (k) {
    case FamilyTag::Kind::none: return "none";
    case FamilyTag::Kind::k22k: return "k22k";
    case FamilyTag::Kind::folded_single: return "folded-single";
    case FamilyTag::Kind::folded_two_layer: return "folded-two-layer";
    case FamilyTag::Kind::nested: return "nested";
    case FamilyTag::Kind::random: return "random";
  }
  return "?";
}

ChannelGain LayeredNetwork::gain(const Edge& e) const {
  auto it = gains_.find(e);
  return it == gains_.end() ? ChannelGain::det(1) : it->second;
}

std::optional<NodeId> LayeredNetwork::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

void LayeredNetwork::set_names(std::vector<std::string> names) {
  if (names.size() != names_.size()) throw Error(Errc::BadNodeId, "name count mismatch");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::BadNodeId, "duplicate node name");
  names_ = std::move(names);
}

bool LayeredNetwork::reaches(NodeId from, NodeId to) const { return reach_.at(from).at(to); }

LayeredNetwork build_network(std::vector<std::vector<NodeId>> layers, std::set<Edge> edges,
                             std::map<Edge, ChannelGain> gains, int q) {
  if (layers.size() < 2) throw Error(Errc::EmptyNetwork, "need a source and a destination layer");
  if (layers.front().empty()) throw Error(Errc::EmptyNetwork, "K = 0");
  if (layers.front().size() != layers.back().size())
    throw Error(Errc::LayerMismatch, "|V_1| = " + std::to_string(layers.front().size()) +
                                         " but |V_L| = " + std::to_string(layers.back().size()));
  int n = 0;
  for (const auto& l : layers) {
    if (l.empty()) throw Error(Errc::EmptyNetwork, "empty layer");
    n += static_cast<int>(l.size());
  }

  LayeredNetwork net;
  net.layer_of_.assign(n, -1);
  for (int li = 0; li < static_cast<int>(layers.size()); ++li) {
    for (NodeId v : layers[li]) {
      if (v < 0 || v >= n) throw Error(Errc::BadNodeId, "node ids must be 0..N-1, got " + std::to_string(v));
      if (net.layer_of_[v] != -1) throw Error(Errc::BadNodeId, "node " + std::to_string(v) + " in two layers");
      net.layer_of_[v] = li;
    }
  }
  net.in_.assign(n, {});
  net.out_.assign(n, {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error(Errc::BadNodeId, "edge endpoint out of range");
    if (net.layer_of_[b] != net.layer_of_[a] + 1)
      throw Error(Errc::CrossLayerEdge, "edge " + std::to_string(a) + "->" + std::to_string(b) +
                                            " goes from layer " + std::to_string(net.layer_of_[a] + 1) +
                                            " to layer " + std::to_string(net.layer_of_[b] + 1));
    net.out_[a].push_back(b);
    net.in_[b].push_back(a);
  }
  int max_gain = 1;
  for (const auto& [e, g] : gains) {
    if (!edges.count(e))
      throw Error(Errc::DanglingGain, "gain for missing edge " + std::to_string(e.first) + "->" +
                                          std::to_string(e.second));
    if (g.kind == ChannelGain::Kind::deterministic) {
      if (g.n < 0) throw Error(Errc::BadParams, "negative gain");
      max_gain = std::max(max_gain, g.n);
    }
  }
  if (q == 0) q = max_gain;
  if (max_gain > q) throw Error(Errc::GainExceedsQ, "gain " + std::to_string(max_gain) + " > q = " + std::to_string(q));

  // Reachability: layered, so one sweep from the last layer backwards.
  net.reach_.assign(n, std::vector<bool>(n, false));
  for (int li = static_cast<int>(layers.size()) - 1; li >= 0; --li) {
    for (NodeId v : layers[li]) {
      net.reach_[v][v] = true;
      for (NodeId w : net.out_[v])
        for (int u = 0; u < n; ++u)
          if (net.reach_[w][u]) net.reach_[v][u] = true;
    }
  }

  net.names_.resize(n);
  for (int v = 0; v < n; ++v) net.names_[v] = "v" + std::to_string(v);
  net.layers_ = std::move(layers);
  net.edges_ = std::move(edges);
  net.gains_ = std::move(gains);
  net.q_ = q;
  return net;
}

namespace {

void dfs_routes(const LayeredNetwork& net, NodeId v, NodeId dst, std::vector<NodeId>& path,
                std::vector<std::vector<NodeId>>& out) {
  path.push_back(v);
  if (v == dst) {
    out.push_back(path);
  } else {
    for (NodeId w : net.out(v))
      if (net.reaches(w, dst)) dfs_routes(net, w, dst, path, out);
  }
  path.pop_back();
}

}  // namespace

std::vector<std::vector<NodeId>> routes(const LayeredNetwork& net, PairId src, PairId dst) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> path;
  NodeId s = net.source(src), d = net.destination(dst);
  if (net.reaches(s, d)) dfs_routes(net, s, d, path, out);
  std::sort(out.begin(), out.end());
  return out;
}

Subgraph induced_subgraph(const LayeredNetwork& net, PairId src, PairId dst) {
  Subgraph g;
  NodeId s = net.source(src), d = net.destination(dst);
  if (!net.reaches(s, d)) return g;
  for (int v = 0; v < net.num_nodes(); ++v)
    if (net.reaches(s, v) && net.reaches(v, d)) g.nodes.insert(v);
  for (const auto& e : net.edges())
    if (g.nodes.count(e.first) && g.nodes.count(e.second)) g.edges.insert(e);
  return g;
}

std::set<PairId> pair_index_set(const LayeredNetwork& net, NodeId v) {
  std::set<PairId> j;
  for (PairId p = 1; p <= net.num_pairs(); ++p)
    if (net.reaches(net.source(p), v) && net.reaches(v, net.destination(p))) j.insert(p);
  return j;
}

Degrees degrees(const LayeredNetwork& net) {
  Degrees d;
  d.in.resize(net.num_nodes());
  d.out.resize(net.num_nodes());
  for (int v = 0; v < net.num_nodes(); ++v) {
    d.in[v] = static_cast<int>(net.in(v).size());
    d.out[v] = static_cast<int>(net.out(v).size());
    d.d_max = std::max({d.d_max, d.in[v], d.out[v]});
  }
  return d;
}

std::set<std::pair<PairId, PairId>> route_adjacency_graph(const LayeredNetwork& net) {
  std::set<std::pair<PairId, PairId>> adj;
  for (PairId i = 1; i <= net.num_pairs(); ++i)
    for (PairId j = 1; j <= net.num_pairs(); ++j)
      if (net.reaches(net.source(i), net.destination(j))) adj.insert({i, j});
  return adj;
}

bool non_interfering(const LayeredNetwork& net, PairId i, PairId j) {
  Subgraph a = induced_subgraph(net, i, i), b = induced_subgraph(net, j, j);
  for (NodeId v : a.nodes)
    if (b.nodes.count(v)) return false;
  return true;
}

bool has_cross_path(const LayeredNetwork& net) {
  for (const auto& [i, j] : route_adjacency_graph(net))
    if (i != j) return true;
  return false;
}

}  // namespace clnet
