#pragma once

#include <vector>

#include "clnet/expansion.hpp"

namespace clnet::detail {

// Exact vertex coloring by DSATUR-ordered backtracking. Returns 0-based
// colors using the minimum number of colors; deterministic for a given
// adjacency (ties broken by vertex index, lowest color first).
std::vector<int> exact_coloring(const std::vector<std::vector<int>>& adj);

// Minimum independent-layer coloring of the hop leaving `layer`: colors for
// the expanded nodes of that layer (-1 elsewhere). Two transmitters conflict
// when they share a super-node, or when one carries the pair a receiver wants
// and the other reaches that receiver with another pair.
std::vector<int> hop_coloring(const RouteExpandedGraph& g, int layer);

}  // namespace clnet::detail
