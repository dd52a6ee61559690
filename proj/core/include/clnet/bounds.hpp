#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clnet/coloring.hpp"
#include "clnet/search.hpp"

namespace clnet {

enum class BoundRule {
  lemma1_cross_path,
  thm2_noninterfering,
  thm2_interfering,
  lemma3_folded,
  thm4_two_layer_folded,
  none_applicable,
};
const char* rule_name(BoundRule r);

struct Witness {
  std::map<Edge, bool> high;  // true: gain n (or h); false: gain 0
  NodeId v_star = -1;
  PairId i = 0, j = 0;
};

struct BoundResult {
  Rational alpha_upper{1};
  BoundRule rule = BoundRule::none_applicable;
  std::optional<Witness> witness;
};

BoundResult upper_bound(const LayeredNetwork& net);
Witness witness_lemma1(const LayeredNetwork& net, PairId i, PairId j);

ColorAssignment construct_thm2_coloring(const LayeredNetwork& net, const RouteExpandedGraph& g);
ColorAssignment construct_folded_single_coloring(int k, int m);
ColorAssignment construct_folded_two_layer_coloring(int k, int m);
ColorAssignment construct_nested_schedule(int l);

// Dispatch on the network's family tag; throws BadParams for untagged nets.
ColorAssignment construct_for_family(const LayeredNetwork& net, const RouteExpandedGraph& g);

struct SchemeRow {
  std::string scheme;
  int colors = 0;
  Rational alpha{0};
  bool checker_valid = false;
  bool symbolic_valid = false;
  bool upper_bound_only = false;  // search ran out of budget
  bool tight = false;
};

struct GainReport {
  std::vector<SchemeRow> rows;
  BoundResult bound;
  Rational mcl_over_mil{1};
};

GainReport gain_report(const LayeredNetwork& net, std::uint64_t budget = kDefaultBudget);
std::string format_report_text(const GainReport& r);

}  // namespace clnet
