#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "clnet/coloring.hpp"

namespace clnet {

// Element of F_2^q. Position 1 (the most significant of the q bits) is the
// top of the vector; S^{q-n} moves the top n bits into the bottom n slots.
class BitSignal {
 public:
  BitSignal() = default;
  BitSignal(int q, std::uint64_t bits);
  static BitSignal zero(int q) { return BitSignal(q, 0); }

  int q() const { return q_; }
  std::uint64_t bits() const { return bits_; }
  int at(int pos) const;  // pos in 1..q
  BitSignal& operator^=(const BitSignal& o);
  friend BitSignal operator^(BitSignal a, const BitSignal& b) { return a ^= b; }
  bool operator==(const BitSignal&) const = default;
  std::string str() const;  // "101"
  std::string hex() const;

 private:
  int q_ = 0;
  std::uint64_t bits_ = 0;
};

BitSignal shift_apply(int n, const BitSignal& x, int q);

enum class ChannelMode { deterministic, gaussian };

struct VerifyFailure {
  enum class Kind { ResidualInterference, MissingDesired, NoiseBudgetExceeded };
  Kind kind;
  int node;         // expanded receiving node
  NodeId from = -1; // base in-neighbor whose symbol is wrong
  PairId symbol_pair = 0;
  long long coefficient = 0;
  std::string detail;
};
const char* failure_name(VerifyFailure::Kind k);

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyFailure> failures;
  // Gaussian mode: combining weight (+1/-1) per receive color, per node.
  std::map<int, std::map<int, int>> weights;
  std::map<int, int> noise_count;
};

// Symbolic check that every receiving node recovers exactly its induced-
// subgraph signal after summing (deterministic: XOR; Gaussian: signed) over R.
VerifyReport symbolic_verify(const LayeredNetwork& net, const RouteExpandedGraph& g,
                             const ColorAssignment& a, ChannelMode mode);

using GainMap = std::map<Edge, int>;
GainMap network_gains(const LayeredNetwork& net);  // deterministic gains (gaussian -> q)
GainMap random_gains(const LayeredNetwork& net, int q, std::mt19937_64& rng);

struct TraceStep {
  std::vector<BitSignal> transmitted;  // per base node
  std::vector<BitSignal> received;
};

struct NodeEquality {
  int node;  // expanded node
  BitSignal combined;  // Y~ reconstructed from the schedule
  BitSignal isolated;  // Y computed inside G_jj alone
  bool equal;
};

struct SimulationTrace {
  int q = 0;
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;  // one per color / time instant
  std::vector<NodeEquality> equality;
  bool all_equal = true;
};

// snapshot[x] is X^j_{V_i} for expanded node x (ignored at destinations).
SimulationTrace deterministic_simulate(const LayeredNetwork& net, const RouteExpandedGraph& g,
                                       const ColorAssignment& a, int q, const GainMap& gains,
                                       const std::vector<BitSignal>& snapshot);

struct TrialSummary {
  std::uint64_t seed = 0;
  int trials = 0;
  int passed = 0;
  int first_failure = -1;
};
TrialSummary run_random_trials(const LayeredNetwork& net, const RouteExpandedGraph& g,
                               const ColorAssignment& a, int q, int trials, std::uint64_t seed);

std::string dump_trace(const LayeredNetwork& net, const RouteExpandedGraph& g,
                       const SimulationTrace& t);

// Multi-block operation with relay functions applied between blocks.
class RelayInput {
 public:
  RelayInput(int node, int block, BitSignal combined, ColorSet receive,
             const std::vector<BitSignal>* slots);
  int node() const { return node_; }
  int block() const { return block_; }
  const BitSignal& combined() const { return combined_; }
  // Raw received signal in one instant of the previous block; only colors in
  // the node's receive set may be read (StrategyArity otherwise).
  const BitSignal& slot(int color) const;

 private:
  int node_;
  int block_;
  BitSignal combined_;
  ColorSet receive_;
  const std::vector<BitSignal>* slots_;
};

using RelayStrategy = std::function<BitSignal(const RelayInput&)>;

struct BlockTrace {
  std::vector<std::vector<NodeEquality>> blocks;
  bool all_equal = true;
};

BlockTrace block_simulate(const LayeredNetwork& net, const RouteExpandedGraph& g,
                          const ColorAssignment& a, int q, const GainMap& gains, int num_blocks,
                          const RelayStrategy& strategy, std::uint64_t seed);

}  // namespace clnet
