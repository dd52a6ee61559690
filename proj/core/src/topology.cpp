#include "clnet/topology.hpp"

#include <random>

namespace clnet {

namespace {

struct Builder {
  std::vector<std::vector<NodeId>> layers;
  std::vector<std::string> names;
  std::set<Edge> edges;

  std::vector<NodeId> layer(const std::vector<std::string>& ns) {
    std::vector<NodeId> ids;
    for (const auto& n : ns) {
      ids.push_back(static_cast<NodeId>(names.size()));
      names.push_back(n);
    }
    layers.push_back(ids);
    return ids;
  }
  LayeredNetwork build(FamilyTag tag) {
    LayeredNetwork net = build_network(layers, edges);
    net.set_names(names);
    net.set_family(tag);
    return net;
  }
};

std::vector<std::string> numbered(const std::string& prefix, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> relay_names(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(k <= 26 ? std::string(1, static_cast<char>('A' + i)) : "R" + std::to_string(i + 1));
  return out;
}

// 1 + [((i-1)^+ + (j-1)) mod K] with 1-based i, j.
int folded_target(int i, int j, int k) { return 1 + ((std::max(i - 1, 0) + (j - 1)) % k); }

void check_km(int k, int m) {
  if (k < 1 || m < 1 || m > k) throw Error(Errc::BadParams, "need 1 <= m <= K");
}

}  // namespace

K22KPattern parse_k22k_pattern(const std::string& s) {
  std::vector<std::string> groups;
  size_t start = 0;
  while (true) {
    size_t p = s.find('/', start);
    groups.push_back(s.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  if (groups.size() < 2) throw Error(Errc::BadPattern, "need at least source and destination groups");
  auto masks = [&](const std::string& g) {
    std::vector<unsigned> out;
    for (char c : g) {
      if (c < '1' || c > '3') throw Error(Errc::BadPattern, std::string("relay mask digit must be 1..3, got '") + c + "'");
      out.push_back(static_cast<unsigned>(c - '0'));
    }
    return out;
  };
  K22KPattern p;
  p.sources = masks(groups.front());
  p.destinations = masks(groups.back());
  p.k = static_cast<int>(p.sources.size());
  if (p.k == 0 || p.destinations.size() != p.sources.size())
    throw Error(Errc::BadPattern, "source and destination groups must have the same nonzero length");
  for (size_t g = 1; g + 1 < groups.size(); ++g) {
    auto m = masks(groups[g]);
    if (m.size() != 2) throw Error(Errc::BadPattern, "relay hop groups have exactly 2 digits");
    p.middle.push_back({m[0], m[1]});
  }
  return p;
}

std::string format_k22k_pattern(const K22KPattern& p) {
  std::string s;
  for (unsigned m : p.sources) s += static_cast<char>('0' + m);
  for (const auto& h : p.middle) s += "/" + std::string{static_cast<char>('0' + h[0]), static_cast<char>('0' + h[1])};
  s += "/";
  for (unsigned m : p.destinations) s += static_cast<char>('0' + m);
  return s;
}

LayeredNetwork gen_k22k(const K22KPattern& p) {
  if (p.k < 1 || static_cast<int>(p.sources.size()) != p.k || static_cast<int>(p.destinations.size()) != p.k)
    throw Error(Errc::BadPattern, "pattern sizes do not match K");
  auto ok = [](unsigned m) { return m >= 1 && m <= 3; };
  Builder b;
  auto src = b.layer(numbered("S", p.k));
  std::vector<std::vector<NodeId>> relays;
  for (int l = 1; l <= p.m(); ++l) relays.push_back(b.layer({"A" + std::to_string(l), "B" + std::to_string(l)}));
  auto dst = b.layer(numbered("D", p.k));
  for (int i = 0; i < p.k; ++i) {
    if (!ok(p.sources[i]) || !ok(p.destinations[i])) throw Error(Errc::BadPattern, "masks must be 1..3");
    for (int r = 0; r < 2; ++r) {
      if (p.sources[i] >> r & 1) b.edges.insert({src[i], relays.front()[r]});
      if (p.destinations[i] >> r & 1) b.edges.insert({relays.back()[r], dst[i]});
    }
  }
  for (size_t h = 0; h < p.middle.size(); ++h)
    for (int r = 0; r < 2; ++r) {
      if (!ok(p.middle[h][r])) throw Error(Errc::BadPattern, "masks must be 1..3");
      for (int t = 0; t < 2; ++t)
        if (p.middle[h][r] >> t & 1) b.edges.insert({relays[h][r], relays[h + 1][t]});
    }
  return b.build({FamilyTag::Kind::k22k, p.k, 0, p.m()});
}

namespace {
bool looks_k22k(const LayeredNetwork& net) {
  if (net.num_layers() < 3) return false;
  for (int l = 1; l + 1 < net.num_layers(); ++l)
    if (net.layers()[l].size() != 2) return false;
  return true;
}
}  // namespace

bool is_non_interfering_k22k(const LayeredNetwork& net) {
  if (!looks_k22k(net)) throw Error(Errc::NotK22K, "middle layers must hold exactly two relays");
  const auto& first = net.layers()[1];
  const auto& last = net.layers()[net.num_layers() - 2];
  for (NodeId v : last) {
    int from = 0;
    for (NodeId u : first) from += net.reaches(u, v) ? 1 : 0;
    if (from > 1) return false;
  }
  return true;
}

LayeredNetwork gen_folded_single(int k, int m) {
  check_km(k, m);
  Builder b;
  auto src = b.layer(numbered("S", k));
  auto dst = b.layer(numbered("D", k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= m; ++j) b.edges.insert({src[i - 1], dst[folded_target(i, j, k) - 1]});
  return b.build({FamilyTag::Kind::folded_single, k, m, 1});
}

LayeredNetwork gen_folded_two_layer(int k, int m) {
  check_km(k, m);
  Builder b;
  auto src = b.layer(numbered("S", k));
  auto rel = b.layer(relay_names(k));
  auto dst = b.layer(numbered("D", k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= m; ++j) {
      int r = folded_target(i, j, k) - 1;
      b.edges.insert({src[i - 1], rel[r]});
      b.edges.insert({rel[r], dst[i - 1]});
    }
  return b.build({FamilyTag::Kind::folded_two_layer, k, m, 2});
}

LayeredNetwork gen_nested(int l, NestedCross cross) {
  if (l < 1 || l > 3) throw Error(Errc::BadParams, "nesting depth must be 1..3");
  // (source, destination) index pairs, built copy by copy: three shifted
  // copies of level l-1, then source i of copy c reaches destination i of copy
  // c+1 (mod 3), or every destination of copy c+1 with NestedCross::complete.
  std::vector<std::pair<int, int>> links{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}};
  int n = 3;
  for (int lvl = 2; lvl <= l; ++lvl, n *= 3) {
    std::vector<std::pair<int, int>> next;
    for (int c = 0; c < 3; ++c) {
      for (auto [a, b] : links) next.push_back({c * n + a, c * n + b});
      int to = (c + 1) % 3;
      for (int i = 0; i < n; ++i) {
        if (cross == NestedCross::matching) {
          next.push_back({c * n + i, to * n + i});
        } else {
          for (int d = 0; d < n; ++d) next.push_back({c * n + i, to * n + d});
        }
      }
    }
    links = std::move(next);
  }
  Builder b;
  auto src = b.layer(numbered("S", n));
  auto dst = b.layer(numbered("D", n));
  for (auto [a, d] : links) b.edges.insert({src[a], dst[d]});
  int fanout = (cross == NestedCross::complete && l > 1) ? n / 3 : 1;
  return b.build({FamilyTag::Kind::nested, n, fanout, l});
}

LayeredNetwork gen_random(const std::vector<int>& sizes, double p, std::uint64_t seed, int max_retries) {
  if (sizes.size() < 2 || sizes.front() < 1 || sizes.front() != sizes.back())
    throw Error(Errc::BadParams, "need >= 2 layers with |first| = |last| >= 1");
  for (int s : sizes)
    if (s < 1) throw Error(Errc::BadParams, "empty layer");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::BadParams, "p must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Builder b;
    std::vector<std::vector<NodeId>> ids;
    for (size_t l = 0; l < sizes.size(); ++l) {
      if (l == 0) ids.push_back(b.layer(numbered("S", sizes[l])));
      else if (l + 1 == sizes.size()) ids.push_back(b.layer(numbered("D", sizes[l])));
      else ids.push_back(b.layer(numbered("R" + std::to_string(l) + "_", sizes[l])));
    }
    for (size_t l = 0; l + 1 < ids.size(); ++l)
      for (NodeId u : ids[l])
        for (NodeId v : ids[l + 1])
          if (coin(rng)) b.edges.insert({u, v});
    LayeredNetwork net = b.build({FamilyTag::Kind::random, sizes.front(), 0, 0, p, seed});
    bool ok = true;
    for (PairId j = 1; j <= net.num_pairs() && ok; ++j) ok = net.reaches(net.source(j), net.destination(j));
    if (ok) return net;
  }
  throw Error(Errc::UnroutableAfterRetries, "no routable network after " + std::to_string(max_retries) + " draws");
}

LayeredNetwork example_two_relay() {
  Builder b;
  auto s = b.layer({"S1", "S2", "S3"});
  auto r = b.layer({"A", "B"});
  auto d = b.layer({"D1", "D2", "D3"});
  b.edges = {{s[0], r[0]}, {s[1], r[0]}, {s[1], r[1]}, {s[2], r[1]},
             {r[0], d[0]}, {r[0], d[1]}, {r[1], d[1]}, {r[1], d[2]}};
  return b.build({});
}

LayeredNetwork example_per_layer() {
  Builder b;
  auto s = b.layer({"S1", "S2", "S3"});
  auto r = b.layer({"A", "B", "C"});
  auto d = b.layer({"D1", "D2", "D3"});
  b.edges = {{s[0], r[0]}, {s[1], r[0]}, {s[1], r[1]}, {s[2], r[1]}, {s[2], r[2]},
             {r[0], d[0]}, {r[1], d[1]}, {r[2], d[2]}, {r[2], d[0]}, {r[2], d[1]}};
  return b.build({});
}

}  // namespace clnet
