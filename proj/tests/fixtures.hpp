#pragma once

#include <random>
#include <string>
#include <vector>

#include "clnet/coloring.hpp"
#include "clnet/topology.hpp"

namespace fixture {

using namespace clnet;

inline ColorSet S(std::initializer_list<int> cs) { return make_set(std::vector<int>(cs)); }

// Two-color schedule of the single-layer (3,2) chain: source 2 repeats its
// symbol in both slots.
inline ColorAssignment single_layer_schedule(const RouteExpandedGraph& g) {
  ColorAssignment a{2, std::vector<NodeColors>(g.size())};
  at(g, a, "S1", 1).transmit = S({0});
  at(g, a, "S2", 2).transmit = S({0, 1});
  at(g, a, "S3", 3).transmit = S({1});
  at(g, a, "D1", 1).receive = S({0});
  at(g, a, "D2", 2).receive = S({1});
  at(g, a, "D3", 3).receive = S({0, 1});
  return a;
}

// Two-layer (3,2) chain with network coding at relays A and C.
inline ColorAssignment two_layer_schedule(const RouteExpandedGraph& g) {
  ColorAssignment a{2, std::vector<NodeColors>(g.size())};
  at(g, a, "S1", 1).transmit = S({0});
  at(g, a, "S2", 2).transmit = S({1});
  at(g, a, "S3", 3).transmit = S({0, 1});
  at(g, a, "A", 1) = {S({0}), 0, S({0, 1})};
  at(g, a, "A", 3) = {S({1}), S({0}), S({1})};
  at(g, a, "B", 1) = {S({0}), 0, S({0})};
  at(g, a, "B", 2) = {S({1}), 0, S({1})};
  at(g, a, "C", 2) = {S({1}), 0, S({0, 1})};
  at(g, a, "C", 3) = {S({0}), S({1}), S({0})};
  at(g, a, "D1", 1).receive = S({0});
  at(g, a, "D2", 2).receive = S({1});
  at(g, a, "D3", 3).receive = S({0, 1});
  return a;
}

// Small random layered networks with every pair routable.
inline LayeredNetwork random_small(std::mt19937_64& rng, int max_nodes = 12) {
  std::uniform_int_distribution<int> kd(1, 3), depth(2, 4), width(1, 3);
  while (true) {
    int k = kd(rng), layers = depth(rng);
    std::vector<int> sizes{k};
    for (int l = 1; l + 1 < layers; ++l) sizes.push_back(width(rng));
    sizes.push_back(k);
    int n = 0;
    for (int s : sizes) n += s;
    if (n > max_nodes) continue;
    std::uniform_real_distribution<double> pd(0.35, 0.8);
    try {
      return gen_random(sizes, pd(rng), rng(), 50);
    } catch (const Error&) {
    }
  }
}

}  // namespace fixture
