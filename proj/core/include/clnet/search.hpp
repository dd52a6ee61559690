#pragma once

#include <cstdint>
#include <optional>

#include "clnet/coloring.hpp"

namespace clnet {

constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchResult {
  std::optional<ColorAssignment> coloring;  // best valid coloring found
  int num_colors = 0;                       // T of `coloring`, 0 if none
  bool minimal = false;       // every smaller T was refuted exhaustively
  bool exhausted = false;     // budget ran out; coloring (if any) is an upper bound
  int lower_bound = 1;        // starting point of the deepening
  int first_unknown = 0;      // smallest T neither refuted nor solved (when exhausted)
  std::uint64_t expansions = 0;
};

int mcl_lower_bound(const RouteExpandedGraph& g);

// Iterative deepening over T in [lower bound, t_max]. If no coloring exists
// with T <= t_max, `coloring` is empty and `minimal` is false.
SearchResult search_mcl(const RouteExpandedGraph& g, int t_max,
                        std::uint64_t budget = kDefaultBudget, CheckOptions opts = {});

ColorAssignment search_mil(const RouteExpandedGraph& g);
ColorAssignment search_end_to_end(const RouteExpandedGraph& g);
ColorAssignment tdma(const RouteExpandedGraph& g);

}  // namespace clnet
