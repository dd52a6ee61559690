#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clnet/expansion.hpp"

namespace clnet {

struct NodeColors {
  ColorSet transmit = 0;  // T
  ColorSet coding = 0;    // C
  ColorSet receive = 0;   // R
  bool operator==(const NodeColors&) const = default;
};

// Per expanded node (indexed like RouteExpandedGraph) T/C/R sets over T colors.
struct ColorAssignment {
  int num_colors = 0;
  std::vector<NodeColors> nodes;
  bool operator==(const ColorAssignment&) const = default;
};

enum class Condition { C1, C2, C3, C4, C5, C6 };
const char* condition_name(Condition c);

struct Violation {
  Condition condition;
  int node;
  std::string detail;
};

struct ValidityReport {
  bool valid = true;
  std::vector<Violation> violations;
  bool is_independent_layer = false;
};

struct CheckOptions {
  // Literal C6 only checks the shared-color count and exclusivity. The
  // default (strict) mode also enforces the multiplicities the cancellation
  // argument relies on; see README "Checker modes".
  bool literal_c6 = false;
};

struct InterfererSet {
  int target = 0;
  std::vector<int> interferers;
  ColorSet effective_receive = 0;
};

ColorSet effective_receive_set(const RouteExpandedGraph& g, const ColorAssignment& a, int x);
bool is_neutralized(const RouteExpandedGraph& g, const ColorAssignment& a, int x, int y);
InterfererSet interferers(const RouteExpandedGraph& g, const ColorAssignment& a, int x);

// Throws MalformedAssignment on size/index problems.
void validate_structure(const RouteExpandedGraph& g, const ColorAssignment& a);

ValidityReport check_coloring(const RouteExpandedGraph& g, const ColorAssignment& a,
                              CheckOptions opts = {});
// Super-node local conditions (C1-C3) for the super-node containing x.
std::vector<Violation> check_supernode(const RouteExpandedGraph& g, const ColorAssignment& a,
                                       int x);
// Receive-side conditions (C4-C6) at x, using a.nodes[x].receive.
std::vector<Violation> check_receive(const RouteExpandedGraph& g, const ColorAssignment& a,
                                     int x, CheckOptions opts = {});

// The color the interferers at x share (c*), when there are interferers and
// such a color exists.
std::optional<int> shared_interferer_color(const RouteExpandedGraph& g, const ColorAssignment& a,
                                           int x);

// 1/T; throws InvalidColoring when the checker rejects a.
Rational achievable_alpha(const RouteExpandedGraph& g, const ColorAssignment& a);

// Smallest receive set (by size, then bitmask) for x that passes check_receive
// given the in-neighbors' T/C sets. Candidates are the C4/C5 closure plus at
// most one extra color for the interferers.
std::optional<ColorSet> find_receive_set(const RouteExpandedGraph& g, const ColorAssignment& a,
                                         int x, CheckOptions opts = {});
// Fills every non-source receive set; throws InvalidColoring if one is impossible.
void derive_receive_sets(const RouteExpandedGraph& g, ColorAssignment& a, CheckOptions opts = {});

// File format: "T=<n>" header then "<base>:<pair> T={..} C={..} R={..}" lines.
std::string write_coloring(const RouteExpandedGraph& g, const ColorAssignment& a);
ColorAssignment parse_coloring(const RouteExpandedGraph& g, const std::string& text);

// Convenience for tests and constructions: look up by base name and pair.
NodeColors& at(const RouteExpandedGraph& g, ColorAssignment& a, const std::string& base,
               PairId pair);

}  // namespace clnet
