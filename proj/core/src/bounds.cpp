#include "clnet/bounds.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <sstream>

#include "clnet/channel.hpp"
#include "clnet/topology.hpp"
#include "graph_color.hpp"

namespace clnet {

const char* rule_name(BoundRule r) {
  switch (r) {
    case BoundRule::lemma1_cross_path: return "lemma1_cross_path";
    case BoundRule::thm2_noninterfering: return "thm2_noninterfering";
    case BoundRule::thm2_interfering: return "thm2_interfering";
    case BoundRule::lemma3_folded: return "lemma3_folded";
    case BoundRule::thm4_two_layer_folded: return "thm4_two_layer_folded";
    case BoundRule::none_applicable: return "none_applicable";
  }
  return "?";
}

Witness witness_lemma1(const LayeredNetwork& net, PairId i, PairId j) {
  if (i == j) throw Error(Errc::NoCrossPath, "witness needs two different pairs");
  if (i < 1 || j < 1 || i > net.num_pairs() || j > net.num_pairs()) throw Error(Errc::NoCrossPath, "pair out of range");
  auto cross = routes(net, i, j);
  if (cross.empty()) throw Error(Errc::NoCrossPath, "no route S" + std::to_string(i) + " -> D" + std::to_string(j));
  Subgraph gjj = induced_subgraph(net, j, j);
  if (gjj.empty()) throw Error(Errc::NoCrossPath, "pair " + std::to_string(j) + " has no route");

  Witness w;
  w.i = i;
  w.j = j;
  const auto& p1 = cross.front();
  for (NodeId v : p1)
    if (gjj.nodes.count(v)) {
      w.v_star = v;
      break;
    }
  for (const Edge& e : net.edges()) w.high[e] = false;
  auto mark = [&](const std::vector<NodeId>& path) {
    for (size_t k = 0; k + 1 < path.size(); ++k) w.high[{path[k], path[k + 1]}] = true;
  };
  mark(p1);
  for (const auto& r : routes(net, j, j))
    if (std::find(r.begin(), r.end(), w.v_star) != r.end()) {
      mark(r);
      break;
    }
  auto own = routes(net, i, i);
  if (!own.empty()) mark(own.front());
  return w;
}

namespace {

bool looks_k22k(const LayeredNetwork& net) {
  if (net.num_layers() < 3) return false;
  for (int l = 1; l + 1 < net.num_layers(); ++l)
    if (net.layers()[l].size() != 2) return false;
  return true;
}

}  // namespace

BoundResult upper_bound(const LayeredNetwork& net) {
  BoundResult r;
  const FamilyTag& f = net.family();
  switch (f.kind) {
    case FamilyTag::Kind::folded_single:
      r.alpha_upper = Rational(1, f.m);
      r.rule = BoundRule::lemma3_folded;
      return r;
    case FamilyTag::Kind::folded_two_layer:
      r.alpha_upper = Rational(1, f.m);
      r.rule = BoundRule::thm4_two_layer_folded;
      return r;
    case FamilyTag::Kind::k22k:
      if (looks_k22k(net)) {
        if (net.num_pairs() == 1) {
          r.alpha_upper = 1;
          r.rule = BoundRule::thm2_noninterfering;
        } else if (is_non_interfering_k22k(net)) {
          r.alpha_upper = Rational(1, degrees(net).d_max);
          r.rule = BoundRule::thm2_noninterfering;
        } else {
          r.alpha_upper = Rational(1, net.num_pairs());
          r.rule = BoundRule::thm2_interfering;
        }
        return r;
      }
      break;
    default:
      break;
  }
  for (PairId i = 1; i <= net.num_pairs(); ++i)
    for (PairId j = 1; j <= net.num_pairs(); ++j)
      if (i != j && net.reaches(net.source(i), net.destination(j)) &&
          net.reaches(net.source(j), net.destination(j))) {
        r.alpha_upper = Rational(1, 2);
        r.rule = BoundRule::lemma1_cross_path;
        r.witness = witness_lemma1(net, i, j);
        return r;
      }
  return r;
}

namespace {

void fill_receive_from_pairs(const RouteExpandedGraph& g, ColorAssignment& a) {
  for (int x = 0; x < g.size(); ++x) {
    a.nodes[x].receive = 0;
    for (int y : pair_neighbors(g, x)) a.nodes[x].receive |= a.nodes[y].transmit;
  }
}

// One hop of the pairing procedure: pairs heard only by relay 0 share colors
// with pairs heard only by relay 1; everybody else gets a fresh color.
std::map<PairId, int> pair_colors(const std::vector<PairId>& only0, const std::vector<PairId>& only1,
                                  const std::vector<PairId>& both) {
  std::map<PairId, int> col;
  bool swap = only1.size() > only0.size();
  std::deque<PairId> big(swap ? only1.begin() : only0.begin(), swap ? only1.end() : only0.end());
  std::deque<PairId> small(swap ? only0.begin() : only1.begin(), swap ? only0.end() : only1.end());
  int next = 0;
  while (!small.empty()) {
    col[big.front()] = col[small.front()] = next++;
    big.pop_front();
    small.pop_front();
  }
  for (PairId p : big) col[p] = next++;
  for (PairId p : both) col[p] = next++;
  return col;
}

}  // namespace

ColorAssignment construct_thm2_coloring(const LayeredNetwork& net, const RouteExpandedGraph& g) {
  if (!looks_k22k(net)) throw Error(Errc::NotK22K, "middle layers must hold exactly two relays");
  if (!is_non_interfering_k22k(net)) return tdma(g);
  if (!g.all_routable()) throw Error(Errc::Unroutable, "every pair needs a route");

  ColorAssignment a{1, std::vector<NodeColors>(g.size())};
  int last = net.num_layers() - 2;
  const auto& first_relays = net.layers()[1];
  const auto& last_relays = net.layers()[last];

  auto split = [&](auto connected) {
    std::vector<PairId> o0, o1, both;
    for (PairId j = 1; j <= net.num_pairs(); ++j) {
      bool c0 = connected(j, 0), c1 = connected(j, 1);
      (c0 && c1 ? both : c0 ? o0 : o1).push_back(j);
    }
    return pair_colors(o0, o1, both);
  };
  auto set_layer = [&](int layer, const std::map<PairId, int>& col) {
    for (int x = 0; x < g.size(); ++x)
      if (g.layer(x) == layer) a.nodes[x].transmit = bit(col.at(g.node(x).pair));
  };

  set_layer(0, split([&](PairId j, int r) { return net.has_edge(net.source(j), first_relays[r]); }));
  set_layer(last, split([&](PairId j, int r) { return net.has_edge(last_relays[r], net.destination(j)); }));
  for (int l = 1; l < last; ++l) {
    std::vector<int> col = detail::hop_coloring(g, l);
    for (int x = 0; x < g.size(); ++x)
      if (col[x] >= 0) a.nodes[x].transmit = bit(col[x]);
  }
  for (const NodeColors& c : a.nodes)
    if (c.transmit) a.num_colors = std::max(a.num_colors, lowest(c.transmit) + 1);
  fill_receive_from_pairs(g, a);
  return a;
}

namespace {

int source_node(const LayeredNetwork& net, const RouteExpandedGraph& g, PairId i) {
  return *g.index(net.source(i), i);
}

bool receive_sets_exist(const RouteExpandedGraph& g, ColorAssignment& a) {
  for (int x = 0; x < g.size(); ++x) {
    if (g.is_source(x)) continue;
    auto r = find_receive_set(g, a, x);
    if (!r) return false;
    a.nodes[x].receive = *r;
  }
  return true;
}

}  // namespace

ColorAssignment construct_folded_single_coloring(int k, int m) {
  LayeredNetwork net = gen_folded_single(k, m);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a{m, std::vector<NodeColors>(g.size())};
  auto tx = [&](PairId i) -> ColorSet& { return a.nodes[source_node(net, g, i)].transmit; };

  if (k == 2 * m - 1 && m > 1) {
    // Overlapping windows: source i repeats on colors j with j+1 <= i <= j+m'.
    int mp = k - m + 1;
    for (PairId i = 1; i <= k; ++i)
      for (int j = 0; j < m; ++j)
        if (j + 1 <= i && i <= j + mp) tx(i) |= bit(j);
  } else {
    for (PairId i = 1; i <= k; ++i) tx(i) = bit((i - 1) % m);
    int q = k / m, tail = k - q * m;
    if (tail > 0) {
      // The last partial window collides with the wrap-around; settle it by
      // exhaustive search over the tail sources' transmit sets.
      std::vector<PairId> ids;
      for (PairId i = q * m + 1; i <= k; ++i) ids.push_back(i);
      ColorSet full = low_mask(m);
      auto rec = [&](auto&& self, size_t d) -> bool {
        if (d == ids.size()) return receive_sets_exist(g, a);
        for (ColorSet s = 1; s <= full; ++s) {
          tx(ids[d]) = s;
          if (self(self, d + 1)) return true;
        }
        return false;
      };
      if (!rec(rec, 0)) throw Error(Errc::BadParams, "no folded-chain coloring found for K=" + std::to_string(k));
    }
  }
  derive_receive_sets(g, a);
  return a;
}

ColorAssignment construct_folded_two_layer_coloring(int k, int m) {
  LayeredNetwork net = gen_folded_two_layer(k, m);
  RouteExpandedGraph g = expand(net);
  if (m == k) return tdma(g);
  if (m != 1 && m != 2 && m != k - 1)
    throw Error(Errc::UnsupportedM, "constructive coloring covers m in {1, 2, K-1, K}");

  ColorAssignment a{m, std::vector<NodeColors>(g.size())};
  ColorSet all = low_mask(m);
  auto plain = [&](PairId j) { return m == 1 ? ColorSet{1} : m == 2 ? bit((j - 1) % 2) : bit(j - 1); };
  bool coded_last = (m == 2 && k % 2 == 1) || (m == k - 1 && m > 2);
  for (int x = 0; x < g.size(); ++x) {
    if (g.is_destination(x)) continue;
    PairId j = g.node(x).pair;
    NodeColors& c = a.nodes[x];
    if (!coded_last || j != k) {
      c.transmit = plain(j);
    } else if (g.is_source(x)) {
      c.transmit = all;
    } else {
      // Pair K neutralizes every other pair sharing the relay.
      for (int y : g.members(x))
        if (y != x) c.coding |= plain(g.node(y).pair);
      c.transmit = all & ~c.coding;
    }
  }
  derive_receive_sets(g, a);
  return a;
}

ColorAssignment construct_nested_schedule(int l) {
  // Both cross-copy variants expand to the same node set.
  LayeredNetwork net = gen_nested(l);
  RouteExpandedGraph g = expand(net);
  // Per level: digit 0 -> {B}, 1 -> {B,W}, 2 -> {W}; receivers 0 -> {B},
  // 1 -> {W}, 2 -> {B,W}. The schedule is the product over levels, with the
  // outermost level as the most significant slot bit.
  static const ColorSet kTx[3] = {0b01, 0b11, 0b10};
  static const ColorSet kRx[3] = {0b01, 0b10, 0b11};
  auto product = [&](int index, const ColorSet* table) {
    std::vector<int> slots{0};
    for (int lvl = 0; lvl < l; ++lvl, index /= 3) {
      std::vector<int> next;
      for (int s : slots)
        for (int c : colors_of(table[index % 3])) next.push_back(s + (c << lvl));
      slots = std::move(next);
    }
    ColorSet out = 0;
    for (int s : slots) out |= bit(s);
    return out;
  };
  ColorAssignment a{1 << l, std::vector<NodeColors>(g.size())};
  for (int x = 0; x < g.size(); ++x) {
    int idx = g.node(x).pair - 1;
    if (g.is_source(x)) a.nodes[x].transmit = product(idx, kTx);
    else a.nodes[x].receive = product(idx, kRx);
  }
  return a;
}

ColorAssignment construct_for_family(const LayeredNetwork& net, const RouteExpandedGraph& g) {
  const FamilyTag& f = net.family();
  ColorAssignment a;
  switch (f.kind) {
    case FamilyTag::Kind::k22k: return construct_thm2_coloring(net, g);
    case FamilyTag::Kind::folded_single: a = construct_folded_single_coloring(f.k, f.m); break;
    case FamilyTag::Kind::folded_two_layer: a = construct_folded_two_layer_coloring(f.k, f.m); break;
    case FamilyTag::Kind::nested: a = construct_nested_schedule(f.l); break;
    default: throw Error(Errc::BadParams, "no constructive coloring for an untagged network");
  }
  if (static_cast<int>(a.nodes.size()) != g.size())
    throw Error(Errc::BadParams, "network does not match its family tag");
  return a;
}

namespace {

SchemeRow make_row(std::string name, const LayeredNetwork& net, const RouteExpandedGraph& g,
                   const ColorAssignment& a, const Rational& bound) {
  SchemeRow r;
  r.scheme = std::move(name);
  r.colors = a.num_colors;
  r.alpha = Rational(1, a.num_colors);
  r.checker_valid = check_coloring(g, a).valid;
  r.symbolic_valid = symbolic_verify(net, g, a, ChannelMode::deterministic).ok &&
                     symbolic_verify(net, g, a, ChannelMode::gaussian).ok;
  r.tight = r.alpha == bound;
  return r;
}

}  // namespace

GainReport gain_report(const LayeredNetwork& net, std::uint64_t budget) {
  GainReport rep;
  rep.bound = upper_bound(net);
  RouteExpandedGraph g = expand(net);
  const Rational& ub = rep.bound.alpha_upper;
  rep.rows.push_back(make_row("end-to-end", net, g, search_end_to_end(g), ub));
  rep.rows.push_back(make_row("mil", net, g, search_mil(g), ub));

  std::optional<ColorAssignment> constructive;
  if (net.family().kind != FamilyTag::Kind::none && net.family().kind != FamilyTag::Kind::random) {
    try {
      constructive = construct_for_family(net, g);
    } catch (const Error& e) {
      if (e.code() != Errc::UnsupportedM) throw;
    }
  }
  SearchResult s = search_mcl(g, std::max(1, g.num_pairs()), budget);
  if (s.coloring) {
    SchemeRow r = make_row("mcl", net, g, *s.coloring, ub);
    r.upper_bound_only = s.exhausted;
    rep.rows.push_back(r);
  }
  if (constructive) rep.rows.push_back(make_row("constructive", net, g, *constructive, ub));

  // Best coded schedule that survives signal-level verification, over MIL.
  const SchemeRow& mil = rep.rows[1];
  Rational best = mil.alpha;
  for (const SchemeRow& r : rep.rows)
    if ((r.scheme == "mcl" || r.scheme == "constructive") && r.symbolic_valid && r.alpha > best) best = r.alpha;
  rep.mcl_over_mil = best / mil.alpha;
  return rep;
}

std::string format_report_text(const GainReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "scheme" << std::setw(5) << "T" << std::setw(8) << "alpha" << std::setw(8)
     << "bound" << std::setw(7) << "tight" << std::setw(9) << "checker" << "symbolic\n";
  for (const SchemeRow& row : r.rows) {
    os << std::setw(14) << row.scheme << std::setw(5) << row.colors
       << std::setw(8) << (format_rational(row.alpha) + (row.upper_bound_only ? "*" : ""))
       << std::setw(8) << format_rational(r.bound.alpha_upper) << std::setw(7) << (row.tight ? "yes" : "no")
       << std::setw(9) << (row.checker_valid ? "pass" : "fail") << (row.symbolic_valid ? "pass" : "fail") << "\n";
  }
  os << "bound " << format_rational(r.bound.alpha_upper) << " (" << rule_name(r.bound.rule) << ")\n";
  os << "mcl/mil " << format_rational(r.mcl_over_mil) << "\n";
  bool starred = std::any_of(r.rows.begin(), r.rows.end(), [](const SchemeRow& x) { return x.upper_bound_only; });
  if (starred) os << "* search budget exhausted; value is achievable but not proven minimal\n";
  return os.str();
}

}  // namespace clnet
