#include "clnet/coloring.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace clnet {

const char* condition_name(Condition c) {
  static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6"};
  return names[static_cast<int>(c)];
}

void validate_structure(const RouteExpandedGraph& g, const ColorAssignment& a) {
  if (a.num_colors < 1 || a.num_colors > kMaxColors)
    throw Error(Errc::MalformedAssignment, "T must be in 1..64, got " + std::to_string(a.num_colors));
  if (static_cast<int>(a.nodes.size()) != g.size())
    throw Error(Errc::MalformedAssignment, "assignment covers " + std::to_string(a.nodes.size()) +
                                               " nodes, graph has " + std::to_string(g.size()));
  ColorSet ok = low_mask(a.num_colors);
  for (int x = 0; x < g.size(); ++x) {
    const NodeColors& c = a.nodes[x];
    if ((c.transmit | c.coding | c.receive) & ~ok)
      throw Error(Errc::MalformedAssignment, "color index >= T at " + g.label(x));
    if (g.is_destination(x) && (c.transmit | c.coding))
      throw Error(Errc::MalformedAssignment, "destination " + g.label(x) + " transmits");
  }
}

namespace {

struct Scratch {
  ColorSet u = 0;       // union of T and C over same-pair in-neighbors
  ColorSet rtilde = 0;  // R intersected with u
  std::vector<int> same, other;
};

void classify(const RouteExpandedGraph& g, const ColorAssignment& a, int x, ColorSet r, Scratch& s) {
  s.same.clear();
  s.other.clear();
  s.u = 0;
  PairId j = g.node(x).pair;
  for (int y : g.in(x)) {
    if (g.node(y).pair == j) {
      s.same.push_back(y);
      s.u |= a.nodes[y].transmit | a.nodes[y].coding;
    } else {
      s.other.push_back(y);
    }
  }
  s.rtilde = r & s.u;
}

// Coding set of the same-super-node member carrying x's pair, if any.
ColorSet neutralizer_coding(const RouteExpandedGraph& g, const ColorAssignment& a, int y, PairId j) {
  auto z = g.index(g.node(y).base, j);
  return z ? a.nodes[*z].coding : 0;
}

// Core of C4-C6. With `out == nullptr` it stops at the first problem.
bool receive_conditions(const RouteExpandedGraph& g, const ColorAssignment& a, int x, ColorSet r,
                        CheckOptions opts, std::vector<Violation>* out) {
  thread_local Scratch s;
  classify(g, a, x, r, s);
  PairId j = g.node(x).pair;
  bool ok = true;
  auto fail = [&](Condition c, std::string detail) {
    ok = false;
    if (out) out->push_back({c, x, std::move(detail)});
    return out == nullptr;
  };

  for (int y : s.same) {
    const NodeColors& cy = a.nodes[y];
    if ((cy.coding & ~r) &&
        fail(Condition::C4, "coding set of " + g.label(y) + " " + format_set(cy.coding) + " not inside R"))
      return false;
    if (popcount(cy.transmit & r) != 1 &&
        fail(Condition::C5, "|T(" + g.label(y) + ") & R| = " + std::to_string(popcount(cy.transmit & r))))
      return false;
  }

  ColorSet common = ~ColorSet{0};
  int n_interferers = 0;
  thread_local std::vector<char> is_interferer;
  is_interferer.assign(s.other.size(), 0);
  for (size_t k = 0; k < s.other.size(); ++k) {
    int y = s.other[k];
    ColorSet t = a.nodes[y].transmit;
    if (t & neutralizer_coding(g, a, y, j)) continue;
    if (t & s.rtilde) {
      is_interferer[k] = 1;
      ++n_interferers;
      common &= t;
    }
  }
  if (n_interferers == 0 && opts.literal_c6) return ok;

  int cstar = -1;
  if (n_interferers > 0) {
    common &= r & ~s.u;
    if (popcount(common) != 1) {
      if (fail(Condition::C6, std::to_string(n_interferers) + " interferer(s) share " +
                                  std::to_string(popcount(common)) + " colors of R outside the pair's own colors"))
        return false;
    } else {
      cstar = lowest(common);
      for (size_t k = 0; k < s.other.size(); ++k) {
        int y = s.other[k];
        if (!is_interferer[k] && has(a.nodes[y].transmit | a.nodes[y].coding, cstar) &&
            fail(Condition::C6, "shared color " + std::to_string(cstar) + " also used by non-interferer " + g.label(y)))
          return false;
      }
    }
  }
  if (opts.literal_c6) return ok;

  // Multiplicities the cancellation argument needs: every interferer is heard
  // exactly twice (c* and one effective color), neutralized nodes only on the
  // coder's colors, and everybody else not at all.
  for (size_t k = 0; k < s.other.size(); ++k) {
    int y = s.other[k];
    ColorSet t = a.nodes[y].transmit;
    if (is_interferer[k]) {
      if (popcount(t & r) != 2 &&
          fail(Condition::C6, "interferer " + g.label(y) + " is heard in " + std::to_string(popcount(t & r)) +
                                  " receive colors, cancellation needs 2"))
        return false;
      continue;
    }
    ColorSet cz = neutralizer_coding(g, a, y, j);
    if (t & cz) {
      if ((t & r) != (t & cz) &&
          fail(Condition::C6, "neutralized " + g.label(y) + " heard outside the coding colors"))
        return false;
    } else if (t & r) {
      if (fail(Condition::C6, "non-interferer " + g.label(y) + " transmits in R at " + format_set(t & r)))
        return false;
    }
  }
  return ok;
}

}  // namespace

ColorSet effective_receive_set(const RouteExpandedGraph& g, const ColorAssignment& a, int x) {
  Scratch s;
  classify(g, a, x, a.nodes.at(x).receive, s);
  return s.rtilde;
}

bool is_neutralized(const RouteExpandedGraph& g, const ColorAssignment& a, int x, int y) {
  PairId j = g.node(x).pair;
  if (g.node(y).pair == j) return false;
  return (a.nodes.at(y).transmit & neutralizer_coding(g, a, y, j)) != 0;
}

InterfererSet interferers(const RouteExpandedGraph& g, const ColorAssignment& a, int x) {
  InterfererSet out;
  out.target = x;
  out.effective_receive = effective_receive_set(g, a, x);
  PairId j = g.node(x).pair;
  for (int y : g.in(x)) {
    if (g.node(y).pair == j || is_neutralized(g, a, x, y)) continue;
    if (a.nodes[y].transmit & out.effective_receive) out.interferers.push_back(y);
  }
  return out;
}

std::optional<int> shared_interferer_color(const RouteExpandedGraph& g, const ColorAssignment& a, int x) {
  InterfererSet is = interferers(g, a, x);
  if (is.interferers.empty()) return std::nullopt;
  ColorSet u = 0;
  for (int y : pair_neighbors(g, x)) u |= a.nodes[y].transmit | a.nodes[y].coding;
  ColorSet common = a.nodes[x].receive & ~u;
  for (int y : is.interferers) common &= a.nodes[y].transmit;
  if (popcount(common) != 1) return std::nullopt;
  return lowest(common);
}

std::vector<Violation> check_supernode(const RouteExpandedGraph& g, const ColorAssignment& a, int x) {
  std::vector<Violation> out;
  const auto& mem = g.members(x);
  for (size_t p = 0; p < mem.size(); ++p)
    for (size_t q = p + 1; q < mem.size(); ++q) {
      ColorSet both = a.nodes[mem[p]].transmit & a.nodes[mem[q]].transmit;
      if (both)
        out.push_back({Condition::C1, mem[p], "shares " + format_set(both) + " with " + g.label(mem[q])});
    }
  for (int y : mem) {
    const NodeColors& cy = a.nodes[y];
    if (!cy.coding) continue;
    if (popcount(cy.transmit) != 1)
      out.push_back({Condition::C2, y, "coding node transmits " + std::to_string(popcount(cy.transmit)) + " times"});
    for (int c : colors_of(cy.coding)) {
      int owner = -1;
      for (int z : mem)
        if (z != y && has(a.nodes[z].transmit, c)) owner = z;
      if (owner < 0) {
        out.push_back({Condition::C3, y, "coding color " + std::to_string(c) + " is not transmitted by another member"});
      } else if (a.nodes[owner].coding) {
        out.push_back({Condition::C3, y, "coding color " + std::to_string(c) + " belongs to coding node " + g.label(owner)});
      }
    }
    for (int z : mem)
      if (z != y && popcount(cy.coding & a.nodes[z].transmit) > 1)
        out.push_back({Condition::C3, y, "takes more than one color from " + g.label(z)});
  }
  return out;
}

std::vector<Violation> check_receive(const RouteExpandedGraph& g, const ColorAssignment& a, int x,
                                     CheckOptions opts) {
  std::vector<Violation> out;
  if (!g.is_source(x)) receive_conditions(g, a, x, a.nodes[x].receive, opts, &out);
  return out;
}

ValidityReport check_coloring(const RouteExpandedGraph& g, const ColorAssignment& a, CheckOptions opts) {
  validate_structure(g, a);
  ValidityReport rep;
  for (const auto& [base, mem] : g.supernodes()) {
    auto v = check_supernode(g, a, mem.front());
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
  }
  for (int x = 0; x < g.size(); ++x) {
    auto v = check_receive(g, a, x, opts);
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
  }
  std::stable_sort(rep.violations.begin(), rep.violations.end(), [](const Violation& l, const Violation& r) {
    return std::tie(l.condition, l.node) < std::tie(r.condition, r.node);
  });
  rep.valid = rep.violations.empty();
  rep.is_independent_layer = true;
  for (int x = 0; x < g.size(); ++x) {
    const NodeColors& c = a.nodes[x];
    if (c.coding || (!g.is_destination(x) && popcount(c.transmit) != 1)) rep.is_independent_layer = false;
  }
  return rep;
}

Rational achievable_alpha(const RouteExpandedGraph& g, const ColorAssignment& a) {
  ValidityReport r = check_coloring(g, a);
  if (!r.valid)
    throw Error(Errc::InvalidColoring, std::string(condition_name(r.violations.front().condition)) + " at " +
                                           g.label(r.violations.front().node) + ": " + r.violations.front().detail);
  return Rational(1, a.num_colors);
}

std::optional<ColorSet> find_receive_set(const RouteExpandedGraph& g, const ColorAssignment& a, int x,
                                         CheckOptions opts) {
  if (g.is_source(x)) return ColorSet{0};
  std::vector<int> same = pair_neighbors(g, x);
  ColorSet base = 0, u = 0;
  for (int y : same) {
    base |= a.nodes[y].coding;
    u |= a.nodes[y].transmit | a.nodes[y].coding;
  }
  ColorSet all = low_mask(a.num_colors);
  std::set<ColorSet> closures;
  // One color from each same-pair transmit set; skip picks that make some
  // transmit set hit twice.
  auto rec = [&](auto&& self, size_t k, ColorSet r) -> void {
    if (k == same.size()) {
      for (int y : same)
        if (popcount(a.nodes[y].transmit & r) != 1) return;
      closures.insert(r);
      return;
    }
    ColorSet t = a.nodes[same[k]].transmit;
    if (t & r) {
      self(self, k + 1, r);
      return;
    }
    for (int c : colors_of(t)) self(self, k + 1, r | bit(c));
  };
  rec(rec, 0, base);

  std::optional<ColorSet> best;
  auto better = [](ColorSet l, ColorSet r) {
    return popcount(l) != popcount(r) ? popcount(l) < popcount(r) : l < r;
  };
  for (ColorSet r0 : closures) {
    if (best && popcount(r0) > popcount(*best)) continue;
    if (receive_conditions(g, a, x, r0, opts, nullptr)) {
      if (!best || better(r0, *best)) best = r0;
      continue;
    }
    for (int c : colors_of(all & ~u)) {
      ColorSet r = r0 | bit(c);
      if (best && !better(r, *best)) continue;
      if (receive_conditions(g, a, x, r, opts, nullptr)) best = r;
    }
  }
  return best;
}

void derive_receive_sets(const RouteExpandedGraph& g, ColorAssignment& a, CheckOptions opts) {
  validate_structure(g, a);
  for (int x = 0; x < g.size(); ++x) {
    if (g.is_source(x)) continue;
    auto r = find_receive_set(g, a, x, opts);
    if (!r) throw Error(Errc::InvalidColoring, "no receive set satisfies C4-C6 at " + g.label(x));
    a.nodes[x].receive = *r;
  }
}

NodeColors& at(const RouteExpandedGraph& g, ColorAssignment& a, const std::string& base, PairId pair) {
  const auto& names = g.base_names();
  auto it = std::find(names.begin(), names.end(), base);
  if (it == names.end()) throw Error(Errc::MalformedAssignment, "unknown node " + base);
  auto x = g.index(static_cast<NodeId>(it - names.begin()), pair);
  if (!x) throw Error(Errc::MalformedAssignment, base + ":" + std::to_string(pair) + " is not an expanded node");
  return a.nodes.at(*x);
}

}  // namespace clnet
