#include "clnet/search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "graph_color.hpp"

namespace clnet {

ColorAssignment tdma(const RouteExpandedGraph& g) {
  if (g.num_pairs() > kMaxColors) throw Error(Errc::BadParams, "TDMA needs more than 64 colors");
  ColorAssignment a{g.num_pairs(), std::vector<NodeColors>(g.size())};
  for (int x = 0; x < g.size(); ++x) {
    ColorSet c = bit(g.node(x).pair - 1);
    if (!g.is_destination(x)) a.nodes[x].transmit = c;
    if (!g.is_source(x)) a.nodes[x].receive = c;
  }
  return a;
}

namespace {

void require_routable(const RouteExpandedGraph& g) {
  if (!g.all_routable())
    throw Error(Errc::Unroutable, "pair " + std::to_string(g.unroutable_pairs().front()) + " has no route");
}

std::vector<std::vector<int>> to_adj(int n, const std::set<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace

ColorAssignment search_end_to_end(const RouteExpandedGraph& g) {
  require_routable(g);
  int k = g.num_pairs();
  // Pairs conflict when they share a node or when any edge joins their
  // subgraphs: sharing a node alone misses a pair's transmitter landing on
  // the other pair's receiver.
  std::set<std::pair<int, int>> conflicts;
  auto add = [&](PairId a, PairId b) {
    if (a != b) conflicts.insert({std::min(a, b) - 1, std::max(a, b) - 1});
  };
  for (const auto& [base, mem] : g.supernodes())
    for (int x : mem)
      for (int y : mem) add(g.node(x).pair, g.node(y).pair);
  for (int x = 0; x < g.size(); ++x)
    for (int y : g.out(x)) add(g.node(x).pair, g.node(y).pair);

  std::vector<int> col = detail::exact_coloring(to_adj(k, conflicts));
  int t = k == 0 ? 1 : *std::max_element(col.begin(), col.end()) + 1;
  ColorAssignment a{t, std::vector<NodeColors>(g.size())};
  for (int x = 0; x < g.size(); ++x) {
    ColorSet c = bit(col[g.node(x).pair - 1]);
    if (!g.is_destination(x)) a.nodes[x].transmit = c;
    if (!g.is_source(x)) a.nodes[x].receive = c;
  }
  return a;
}

std::vector<int> detail::hop_coloring(const RouteExpandedGraph& g, int l) {
  std::vector<int> verts;
  std::map<int, int> local;
  for (int x = 0; x < g.size(); ++x)
    if (g.layer(x) == l) {
      local[x] = static_cast<int>(verts.size());
      verts.push_back(x);
    }
  std::set<std::pair<int, int>> conflicts;
  auto add = [&](int u, int v) {
    if (u != v) conflicts.insert({std::min(local[u], local[v]), std::max(local[u], local[v])});
  };
  for (int x : verts)
    for (int y : g.members(x)) add(x, y);
  for (int w = 0; w < g.size(); ++w) {
    if (g.layer(w) != l + 1) continue;
    PairId j = g.node(w).pair;
    for (int p : g.in(w))
      if (g.node(p).pair == j)
        for (int o : g.in(w))
          if (g.node(o).pair != j) add(p, o);
  }
  std::vector<int> col = detail::exact_coloring(to_adj(static_cast<int>(verts.size()), conflicts));
  std::vector<int> out(g.size(), -1);
  for (size_t k = 0; k < verts.size(); ++k) out[verts[k]] = col[k];
  return out;
}

ColorAssignment search_mil(const RouteExpandedGraph& g) {
  require_routable(g);
  ColorAssignment a{1, std::vector<NodeColors>(g.size())};
  // Transmitters of one layer only reach the next, so hops never constrain
  // each other and share one palette.
  for (int l = 0; l + 1 < g.num_layers(); ++l) {
    std::vector<int> col = detail::hop_coloring(g, l);
    for (int x = 0; x < g.size(); ++x)
      if (col[x] >= 0) {
        a.nodes[x].transmit = bit(col[x]);
        a.num_colors = std::max(a.num_colors, col[x] + 1);
      }
  }
  for (int x = 0; x < g.size(); ++x)
    for (int y : pair_neighbors(g, x)) a.nodes[x].receive |= a.nodes[y].transmit;
  return a;
}

int mcl_lower_bound(const RouteExpandedGraph& g) {
  // C1 gives every member of a transmitting super-node its own color.
  int lb = 1;
  for (const auto& [base, mem] : g.supernodes())
    if (!g.is_destination(mem.front())) lb = std::max(lb, static_cast<int>(mem.size()));
  return lb;
}

namespace {

struct Combo {
  std::vector<NodeColors> members;  // transmit/coding only
  ColorSet used = 0;
};

// All (T, C) assignments of one super-node satisfying C1-C3.
std::vector<Combo> supernode_combos(int n, int t, bool transmits) {
  std::vector<Combo> out;
  if (!transmits) {
    out.push_back({std::vector<NodeColors>(n), 0});
    return out;
  }
  std::vector<int> owner(t, 0);  // 0 = unused, k = member k-1
  auto emit_coding = [&](const std::vector<ColorSet>& tx) {
    Combo base;
    base.members.resize(n);
    for (int k = 0; k < n; ++k) {
      base.members[k].transmit = tx[k];
      base.used |= tx[k];
    }
    out.push_back(base);
    if (n < 2) return;
    // Choose the coding members, then for each one a color from some subset
    // of the non-coding members (at most one color per member).
    for (unsigned q = 1; q < (1U << n); ++q) {
      bool ok = q != (1U << n) - 1;
      for (int k = 0; k < n && ok; ++k)
        if ((q >> k & 1) && popcount(tx[k]) != 1) ok = false;
      if (!ok) continue;
      std::vector<int> coders, plain;
      for (int k = 0; k < n; ++k) ((q >> k & 1) ? coders : plain).push_back(k);
      std::vector<std::vector<ColorSet>> options(coders.size());
      for (size_t ci = 0; ci < coders.size(); ++ci) {
        std::vector<ColorSet> opts{0};
        for (int z : plain) {
          std::vector<ColorSet> next;
          for (ColorSet o : opts) {
            next.push_back(o);
            for (int c : colors_of(tx[z])) next.push_back(o | bit(c));
          }
          opts = std::move(next);
        }
        for (ColorSet o : opts)
          if (o) options[ci].push_back(o);
      }
      std::vector<size_t> idx(coders.size(), 0);
      while (true) {
        Combo c = base;
        for (size_t ci = 0; ci < coders.size(); ++ci) c.members[coders[ci]].coding = options[ci][idx[ci]];
        out.push_back(std::move(c));
        size_t d = 0;
        while (d < idx.size() && ++idx[d] == options[d].size()) idx[d++] = 0;
        if (d == idx.size()) break;
      }
    }
  };
  auto rec = [&](auto&& self, int c) -> void {
    if (c == t) {
      std::vector<ColorSet> tx(n, 0);
      for (int k = 0; k < t; ++k)
        if (owner[k]) tx[owner[k] - 1] |= bit(k);
      for (ColorSet s : tx)
        if (!s) return;
      emit_coding(tx);
      return;
    }
    for (int o = 0; o <= n; ++o) {
      owner[c] = o;
      self(self, c + 1);
    }
  };
  rec(rec, 0);
  std::stable_sort(out.begin(), out.end(), [](const Combo& l, const Combo& r) {
    for (size_t k = 0; k < l.members.size(); ++k) {
      if (l.members[k].transmit != r.members[k].transmit) return l.members[k].transmit < r.members[k].transmit;
      if (l.members[k].coding != r.members[k].coding) return l.members[k].coding < r.members[k].coding;
    }
    return false;
  });
  return out;
}

struct Backtracker {
  const RouteExpandedGraph& g;
  CheckOptions opts;
  int t;
  std::uint64_t budget;
  std::uint64_t& expansions;
  std::vector<std::vector<int>> order;              // super-node members in (layer, base) order
  std::vector<std::vector<int>> triggers;           // receivers to settle after step s
  std::map<std::pair<int, bool>, std::vector<Combo>> combos;
  ColorAssignment a;
  bool out_of_budget = false;

  Backtracker(const RouteExpandedGraph& g_, CheckOptions o, int t_, std::uint64_t b, std::uint64_t& e)
      : g(g_), opts(o), t(t_), budget(b), expansions(e) {
    a.num_colors = t;
    a.nodes.assign(g.size(), {});
    std::vector<std::pair<int, NodeId>> keys;
    for (const auto& [base, mem] : g.supernodes()) keys.push_back({g.layer(mem.front()), base});
    std::sort(keys.begin(), keys.end());
    std::map<NodeId, int> step_of;
    for (auto [l, base] : keys) {
      step_of[base] = static_cast<int>(order.size());
      order.push_back(g.supernodes().at(base));
    }
    triggers.assign(order.size(), {});
    for (int x = 0; x < g.size(); ++x) {
      if (g.is_source(x)) continue;
      int last = -1;
      for (int y : g.in(x)) last = std::max(last, step_of[g.node(y).base]);
      if (last >= 0) triggers[last].push_back(x);
    }
    for (const auto& mem : order) {
      bool tx = !g.is_destination(mem.front());
      auto key = std::make_pair(static_cast<int>(mem.size()), tx);
      if (!combos.count(key)) combos[key] = supernode_combos(key.first, t, tx);
    }
  }

  bool run(size_t step, int used) {
    if (step == order.size()) return true;
    const auto& mem = order[step];
    const auto& list = combos.at({static_cast<int>(mem.size()), !g.is_destination(mem.front())});
    for (const Combo& c : list) {
      ColorSet fresh = c.used & ~low_mask(used);
      int k = popcount(fresh);
      if (fresh && (fresh >> used) != low_mask(k)) continue;
      if (++expansions > budget) {
        out_of_budget = true;
        return false;
      }
      for (size_t m = 0; m < mem.size(); ++m) {
        a.nodes[mem[m]].transmit = c.members[m].transmit;
        a.nodes[mem[m]].coding = c.members[m].coding;
      }
      bool ok = true;
      for (int x : triggers[step]) {
        auto r = find_receive_set(g, a, x, opts);
        if (!r) {
          ok = false;
          break;
        }
        a.nodes[x].receive = *r;
      }
      if (ok && run(step + 1, used + k)) return true;
      if (out_of_budget) return false;
    }
    for (int x : mem) a.nodes[x].transmit = a.nodes[x].coding = 0;
    return false;
  }
};

}  // namespace

SearchResult search_mcl(const RouteExpandedGraph& g, int t_max, std::uint64_t budget, CheckOptions opts) {
  if (t_max < 1) throw Error(Errc::BadParams, "t_max must be >= 1");
  t_max = std::min(t_max, kMaxColors);
  SearchResult res;
  res.lower_bound = mcl_lower_bound(g);
  for (int t = res.lower_bound; t <= t_max; ++t) {
    Backtracker bt(g, opts, t, budget, res.expansions);
    if (bt.run(0, 0)) {
      res.coloring = bt.a;
      res.num_colors = t;
      res.minimal = true;
      return res;
    }
    if (bt.out_of_budget) {
      res.exhausted = true;
      res.first_unknown = t;
      if (g.all_routable() && g.num_pairs() <= kMaxColors) {
        res.coloring = tdma(g);
        res.num_colors = g.num_pairs();
      }
      return res;
    }
  }
  return res;
}

}  // namespace clnet
