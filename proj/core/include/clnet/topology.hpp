#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "clnet/network.hpp"

namespace clnet {

// Relay masks: bit 0 = first relay of the next layer, bit 1 = second.
struct K22KPattern {
  int k = 0;
  std::vector<unsigned> sources;                 // per source, mask over layer-2 relays
  std::vector<std::array<unsigned, 2>> middle;   // per relay hop, mask per relay
  std::vector<unsigned> destinations;            // per destination, mask over last relays
  int m() const { return static_cast<int>(middle.size()) + 1; }
};

// "312/32/11/123": source masks, then one 2-digit group per relay hop, then
// destination masks. Digits are masks 1..3.
K22KPattern parse_k22k_pattern(const std::string& s);
std::string format_k22k_pattern(const K22KPattern& p);

LayeredNetwork gen_k22k(const K22KPattern& p);
bool is_non_interfering_k22k(const LayeredNetwork& net);

LayeredNetwork gen_folded_single(int k, int m);
LayeredNetwork gen_folded_two_layer(int k, int m);
// Cross-copy links of the nested chain: source i of one copy reaches
// destination i of the next (matching), or all of its destinations (complete).
enum class NestedCross { matching, complete };
LayeredNetwork gen_nested(int l, NestedCross cross = NestedCross::matching);
LayeredNetwork gen_random(const std::vector<int>& layer_sizes, double p, std::uint64_t seed,
                          int max_retries = 1000);

// Small worked examples with two or three pairs.
LayeredNetwork example_two_relay();      // pairs 1 and 3 disjoint, 2 shares both relays
LayeredNetwork example_per_layer();      // end-to-end needs 3 colors, per-layer 2

}  // namespace clnet
