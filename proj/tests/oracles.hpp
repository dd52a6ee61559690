// Test-side reference implementations. These are written from the
// definitions directly (sets, brute force, dense matrices) and deliberately
// share no code with the library beyond the data types.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "clnet/channel.hpp"
#include "clnet/coloring.hpp"

namespace oracle {

using namespace clnet;
using Set = std::set<int>;

inline Set as_set(ColorSet s) {
  Set out;
  for (int c = 0; c < 64; ++c)
    if ((s >> c) & 1U) out.insert(c);
  return out;
}
inline Set meet(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}
inline Set join(const Set& a, const Set& b) {
  Set out = a;
  out.insert(b.begin(), b.end());
  return out;
}
inline Set minus(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

// Every layer-monotone node sequence from S_i to D_j, by trying all
// combinations of one node per layer.
inline std::set<std::vector<NodeId>> brute_routes(const LayeredNetwork& net, PairId i, PairId j) {
  std::set<std::vector<NodeId>> out;
  std::vector<NodeId> seq;
  std::function<void(int)> rec = [&](int l) {
    if (l == net.num_layers()) {
      if (seq.front() != net.source(i) || seq.back() != net.destination(j)) return;
      for (size_t k = 0; k + 1 < seq.size(); ++k)
        if (!net.edges().count({seq[k], seq[k + 1]})) return;
      out.insert(seq);
      return;
    }
    for (NodeId v : net.layers()[l]) {
      seq.push_back(v);
      rec(l + 1);
      seq.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::set<NodeId> brute_subgraph_nodes(const LayeredNetwork& net, PairId i, PairId j) {
  std::set<NodeId> out;
  for (const auto& r : brute_routes(net, i, j)) out.insert(r.begin(), r.end());
  return out;
}

inline std::set<PairId> brute_pair_index(const LayeredNetwork& net, NodeId v) {
  std::set<PairId> out;
  for (PairId j = 1; j <= net.num_pairs(); ++j)
    if (brute_subgraph_nodes(net, j, j).count(v)) out.insert(j);
  return out;
}

// S^{q-n} as an explicit q x q matrix over F2, applied to the column vector
// whose first entry is bit position 1.
inline BitSignal dense_shift(int n, const BitSignal& x, int q) {
  std::vector<std::vector<int>> s(q, std::vector<int>(q, 0)), m(q, std::vector<int>(q, 0));
  for (int r = 1; r < q; ++r) s[r][r - 1] = 1;
  for (int r = 0; r < q; ++r) m[r][r] = 1;
  for (int p = 0; p < q - n; ++p) {
    std::vector<std::vector<int>> nm(q, std::vector<int>(q, 0));
    for (int r = 0; r < q; ++r)
      for (int c = 0; c < q; ++c)
        for (int k = 0; k < q; ++k) nm[r][c] ^= s[r][k] & m[k][c];
    m = nm;
  }
  std::uint64_t out = 0;
  for (int r = 0; r < q; ++r) {
    int v = 0;
    for (int c = 0; c < q; ++c) v ^= m[r][c] & x.at(c + 1);
    if (v) out |= std::uint64_t{1} << (q - 1 - r);
  }
  return BitSignal(q, out);
}

struct NodeSets {
  Set t, c, r;
};

inline std::vector<NodeSets> sets_of(const ColorAssignment& a) {
  std::vector<NodeSets> out;
  for (const auto& n : a.nodes) out.push_back({as_set(n.transmit), as_set(n.coding), as_set(n.receive)});
  return out;
}

inline bool supernode_ok(const RouteExpandedGraph& g, const std::vector<NodeSets>& s, int x) {
  const auto& mem = g.members(x);
  for (int y : mem)
    for (int z : mem)
      if (y != z && !meet(s[y].t, s[z].t).empty()) return false;
  for (int y : mem) {
    if (s[y].c.empty()) continue;
    if (s[y].t.size() != 1) return false;
    for (int col : s[y].c) {
      bool found = false;
      for (int z : mem)
        if (z != y && s[z].t.count(col) && s[z].c.empty()) found = true;
      if (!found) return false;
    }
    for (int z : mem)
      if (z != y && meet(s[y].c, s[z].t).size() > 1) return false;
  }
  return true;
}

// Member of y's super-node carrying pair j, or -1.
inline int same_supernode_pair(const RouteExpandedGraph& g, int y, PairId j) {
  for (int z : g.members(y))
    if (g.node(z).pair == j) return z;
  return -1;
}

inline bool neutral(const RouteExpandedGraph& g, const std::vector<NodeSets>& s, int y, PairId j) {
  int z = same_supernode_pair(g, y, j);
  return z >= 0 && !meet(s[y].t, s[z].c).empty();
}

// Interferers, clause by clause.
inline std::set<int> brute_interferers(const RouteExpandedGraph& g, const std::vector<NodeSets>& s, int x,
                                       const Set& r) {
  PairId j = g.node(x).pair;
  Set u;
  for (int y : g.in(x))
    if (g.node(y).pair == j) u = join(u, join(s[y].t, s[y].c));
  Set rt = meet(r, u);
  std::set<int> out;
  for (int y : g.in(x)) {
    bool clause1 = g.node(y).pair != j;
    bool clause2 = clause1 && !neutral(g, s, y, j);
    bool clause3 = !meet(s[y].t, rt).empty();
    if (clause1 && clause2 && clause3) out.insert(y);
  }
  return out;
}

// C4-C6 at x for receive set r, strict reading (see README).
inline bool receive_ok(const RouteExpandedGraph& g, const std::vector<NodeSets>& s, int x, const Set& r,
                       bool strict = true) {
  PairId j = g.node(x).pair;
  Set u;
  std::vector<int> own, other;
  for (int y : g.in(x)) {
    if (g.node(y).pair == j) {
      own.push_back(y);
      u = join(u, join(s[y].t, s[y].c));
    } else {
      other.push_back(y);
    }
  }
  for (int y : own) {
    if (!minus(s[y].c, r).empty()) return false;
    if (meet(s[y].t, r).size() != 1) return false;
  }
  std::set<int> inter = brute_interferers(g, s, x, r);
  if (!inter.empty()) {
    Set common = minus(r, u);
    for (int y : inter) common = meet(common, s[y].t);
    if (common.size() != 1) return false;
    int c = *common.begin();
    for (int y : other)
      if (!inter.count(y) && join(s[y].t, s[y].c).count(c)) return false;
  }
  if (!strict) return true;
  for (int y : other) {
    Set heard = meet(s[y].t, r);
    if (inter.count(y)) {
      if (heard.size() != 2) return false;
    } else if (neutral(g, s, y, j)) {
      if (heard != meet(s[y].t, s[same_supernode_pair(g, y, j)].c)) return false;
    } else if (!heard.empty()) {
      return false;
    }
  }
  return true;
}

inline bool coloring_ok(const RouteExpandedGraph& g, const ColorAssignment& a, bool strict = true) {
  auto s = sets_of(a);
  for (int x = 0; x < g.size(); ++x) {
    if (!supernode_ok(g, s, x)) return false;
    if (!g.is_source(x) && !receive_ok(g, s, x, s[x].r, strict)) return false;
  }
  return true;
}

// Smallest T <= t_max admitting a valid coloring, by enumerating every
// (T, C) per super-node and every receive subset per node; 0 if none.
inline int enumerate_min_colors(const RouteExpandedGraph& g, int t_max) {
  std::vector<std::vector<int>> supers;
  for (const auto& [b, mem] : g.supernodes()) supers.push_back(mem);
  std::sort(supers.begin(), supers.end(), [&](const auto& l, const auto& r) {
    return g.layer(l.front()) < g.layer(r.front());
  });
  for (int t = 1; t <= t_max; ++t) {
    int full = 1 << t;
    std::vector<NodeSets> s(g.size());
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
      if (k == supers.size()) {
        for (int x = 0; x < g.size(); ++x) {
          if (g.is_source(x)) continue;
          bool any = false;
          for (int rm = 0; rm < full && !any; ++rm) any = receive_ok(g, s, x, as_set(rm));
          if (!any) return false;
        }
        return true;
      }
      const auto& mem = supers[k];
      bool dest = g.is_destination(mem.front());
      bool src = g.is_source(mem.front());
      // Each member independently picks T and C from all subsets.
      std::vector<int> idx(mem.size(), 0);
      int per = dest ? 1 : full * full;
      while (true) {
        bool shape_ok = true;
        for (size_t m = 0; m < mem.size(); ++m) {
          int tm = idx[m] % full, cm = idx[m] / full;
          s[mem[m]].t = dest ? Set{} : as_set(tm);
          s[mem[m]].c = dest ? Set{} : as_set(cm);
          if (!dest && tm == 0) shape_ok = false;
          if (src && cm != 0) shape_ok = false;
        }
        if (shape_ok && supernode_ok(g, s, mem.front())) {
          // Prune: receivers whose in-neighbors are all fixed by now.
          bool prune = false;
          for (int x = 0; x < g.size() && !prune; ++x) {
            if (g.layer(x) != g.layer(mem.front()) + 1) continue;
            bool ready = true;
            for (int y : g.in(x))
              for (size_t kk = k + 1; kk < supers.size(); ++kk)
                if (std::count(supers[kk].begin(), supers[kk].end(), y)) ready = false;
            if (!ready) continue;
            bool any = false;
            for (int rm = 0; rm < full && !any; ++rm) any = receive_ok(g, s, x, as_set(rm));
            prune = !any;
          }
          if (!prune && rec(k + 1)) return true;
        }
        size_t d = 0;
        while (d < idx.size() && ++idx[d] == per) idx[d++] = 0;
        if (d == idx.size()) break;
      }
      for (int y : mem) s[y] = {};
      return false;
    };
    if (rec(0)) return t;
  }
  return 0;
}

struct SimPair {
  BitSignal combined, isolated;
};

// Network run per the transmit rule plus the isolated run of each pair's
// induced subgraph, both through the dense shift matrices.
inline std::map<int, SimPair> simulate(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a,
                                       int q, const GainMap& gains, const std::vector<BitSignal>& snap) {
  auto s = sets_of(a);
  auto gain = [&](NodeId u, NodeId v) {
    auto it = gains.find({u, v});
    return it == gains.end() ? 0 : it->second;
  };
  std::vector<std::vector<BitSignal>> y(a.num_colors, std::vector<BitSignal>(net.num_nodes(), BitSignal::zero(q)));
  for (int t = 0; t < a.num_colors; ++t) {
    std::vector<BitSignal> x(net.num_nodes(), BitSignal::zero(q));
    for (int e = 0; e < g.size(); ++e) {
      if (!s[e].t.count(t)) continue;
      BitSignal v = snap[e];
      for (int c : s[e].c)
        for (int z : g.members(e))
          if (z != e && s[z].t.count(c)) v ^= snap[z];
      x[g.node(e).base] ^= v;
    }
    for (const auto& [u, w] : net.edges()) y[t][w] ^= dense_shift(gain(u, w), x[u], q);
  }
  std::map<int, SimPair> out;
  for (int e = 0; e < g.size(); ++e) {
    if (g.is_source(e)) continue;
    PairId j = g.node(e).pair;
    NodeId w = g.node(e).base;
    SimPair sp{BitSignal::zero(q), BitSignal::zero(q)};
    for (int t : s[e].r) sp.combined ^= y[t][w];
    auto gjj = brute_subgraph_nodes(net, j, j);
    for (NodeId u : net.in(w))
      if (gjj.count(u)) {
        auto ue = g.index(u, j);
        sp.isolated ^= dense_shift(gain(u, w), snap[*ue], q);
      }
    out.emplace(e, sp);
  }
  return out;
}

}  // namespace oracle
