#include "clnet/channel.hpp"

#include <algorithm>
#include <sstream>

namespace clnet {

namespace {
std::uint64_t mask_q(int q) { return q >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1; }
}  // namespace

BitSignal::BitSignal(int q, std::uint64_t bits) : q_(q), bits_(bits & mask_q(q)) {
  if (q < 1 || q > 64) throw Error(Errc::BadParams, "q must be in 1..64");
}

int BitSignal::at(int pos) const { return static_cast<int>((bits_ >> (q_ - pos)) & 1U); }

BitSignal& BitSignal::operator^=(const BitSignal& o) {
  if (o.q_ != q_) throw Error(Errc::BadParams, "q mismatch in XOR");
  bits_ ^= o.bits_;
  return *this;
}

std::string BitSignal::str() const {
  std::string s;
  for (int p = 1; p <= q_; ++p) s += static_cast<char>('0' + at(p));
  return s;
}

std::string BitSignal::hex() const {
  std::ostringstream os;
  os << std::hex << bits_;
  return os.str();
}

BitSignal shift_apply(int n, const BitSignal& x, int q) {
  if (n < 0 || n > q) throw Error(Errc::GainExceedsQ, "gain " + std::to_string(n) + " outside 0.." + std::to_string(q));
  int s = q - n;
  return BitSignal(q, s >= 64 ? 0 : x.bits() >> s);
}

const char* failure_name(VerifyFailure::Kind k) {
  switch (k) {
    case VerifyFailure::Kind::ResidualInterference: return "ResidualInterference";
    case VerifyFailure::Kind::MissingDesired: return "MissingDesired";
    case VerifyFailure::Kind::NoiseBudgetExceeded: return "NoiseBudgetExceeded";
  }
  return "?";
}

namespace {

// Member of x's super-node that transmits color c, if any.
int owner_of(const RouteExpandedGraph& g, const ColorAssignment& a, int x, int c) {
  for (int z : g.members(x))
    if (has(a.nodes[z].transmit, c)) return z;
  return -1;
}

// Coefficient of each member symbol in the base node's transmission at color
// t: +1 for the own symbol, `coded` for neutralizing copies.
std::map<int, long long> transmit_terms(const RouteExpandedGraph& g, const ColorAssignment& a, int any_member,
                                        int t, long long coded) {
  std::map<int, long long> terms;
  for (int y : g.members(any_member)) {
    const NodeColors& c = a.nodes[y];
    if (!has(c.transmit, t)) continue;
    terms[y] += 1;
    for (int cc : colors_of(c.coding)) {
      int z = owner_of(g, a, y, cc);
      if (z >= 0 && z != y) terms[z] += coded;
    }
  }
  return terms;
}

}  // namespace

VerifyReport symbolic_verify(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a,
                             ChannelMode mode) {
  (void)net;
  validate_structure(g, a);
  VerifyReport rep;
  bool gauss = mode == ChannelMode::gaussian;

  for (int x = 0; x < g.size(); ++x) {
    if (g.is_source(x)) continue;
    PairId j = g.node(x).pair;
    ColorSet r = a.nodes[x].receive;
    std::vector<int> rc = colors_of(r);
    std::vector<int> bases;  // one representative member per in-neighbor super-node
    for (int y : g.in(x))
      if (std::none_of(bases.begin(), bases.end(), [&](int b) { return g.node(b).base == g.node(y).base; }))
        bases.push_back(y);

    // Per base in-neighbor, per color: the symbols it puts on the air.
    std::vector<std::vector<std::map<int, long long>>> terms(bases.size());
    for (size_t b = 0; b < bases.size(); ++b)
      for (int t : rc) terms[b].push_back(transmit_terms(g, a, bases[b], t, gauss ? -1 : 1));

    auto evaluate = [&](const std::vector<int>& w, std::vector<VerifyFailure>* out) {
      bool ok = true;
      for (size_t b = 0; b < bases.size(); ++b) {
        std::map<int, long long> sum;
        for (size_t k = 0; k < rc.size(); ++k)
          for (auto [sym, coef] : terms[b][k]) sum[sym] += w[k] * coef;
        for (int sym : g.members(bases[b])) {
          long long coef = sum.count(sym) ? sum[sym] : 0;
          if (!gauss) coef = ((coef % 2) + 2) % 2;
          bool desired = g.node(sym).pair == j;
          long long want = desired ? 1 : 0;
          if (coef == want) continue;
          ok = false;
          if (!out) return false;
          VerifyFailure f;
          f.kind = desired ? VerifyFailure::Kind::MissingDesired : VerifyFailure::Kind::ResidualInterference;
          f.node = x;
          f.from = g.node(sym).base;
          f.symbol_pair = g.node(sym).pair;
          f.coefficient = coef;
          f.detail = "symbol X^" + std::to_string(f.symbol_pair) + " of " + g.base_names()[f.from] + " at " +
                     g.label(x) + " has coefficient " + std::to_string(coef);
          out->push_back(std::move(f));
        }
      }
      return ok;
    };

    std::vector<int> w(rc.size(), 1);
    if (gauss) {
      // Default: subtract the shared interferer color, add the rest. If that
      // fails, any sign pattern that cancels is an equally valid receiver.
      if (auto cstar = shared_interferer_color(g, a, x))
        for (size_t k = 0; k < rc.size(); ++k)
          if (rc[k] == *cstar) w[k] = -1;
      if (!evaluate(w, nullptr) && rc.size() < 20) {
        for (std::uint32_t p = 0; p < (1U << rc.size()); ++p) {
          std::vector<int> cand(rc.size());
          for (size_t k = 0; k < rc.size(); ++k) cand[k] = (p >> k & 1) ? -1 : 1;
          if (evaluate(cand, nullptr)) {
            w = cand;
            break;
          }
        }
      }
    }
    if (!evaluate(w, &rep.failures)) rep.ok = false;
    if (gauss) {
      for (size_t k = 0; k < rc.size(); ++k) rep.weights[x][rc[k]] = w[k];
      rep.noise_count[x] = static_cast<int>(rc.size());
      if (static_cast<int>(rc.size()) > a.num_colors) {
        rep.ok = false;
        rep.failures.push_back({VerifyFailure::Kind::NoiseBudgetExceeded, x, -1, 0,
                                static_cast<long long>(rc.size()), "noise terms exceed T at " + g.label(x)});
      }
    }
  }
  return rep;
}

GainMap network_gains(const LayeredNetwork& net) {
  GainMap m;
  for (const Edge& e : net.edges()) {
    ChannelGain c = net.gain(e);
    m[e] = c.kind == ChannelGain::Kind::deterministic ? c.n : net.q();
  }
  return m;
}

GainMap random_gains(const LayeredNetwork& net, int q, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, q);
  GainMap m;
  for (const Edge& e : net.edges()) m[e] = d(rng);
  return m;
}

namespace {

void check_c1_guard(const RouteExpandedGraph& g, const ColorAssignment& a) {
  for (const auto& [base, mem] : g.supernodes())
    for (size_t p = 0; p < mem.size(); ++p)
      for (size_t r = p + 1; r < mem.size(); ++r)
        if (a.nodes[mem[p]].transmit & a.nodes[mem[r]].transmit)
          throw Error(Errc::InvalidColoring, "two pairs of " + g.base_names()[base] + " share an instant");
}

BitSignal gain_at(const GainMap& gains, const Edge& e, const BitSignal& x, int q) {
  auto it = gains.find(e);
  int n = it == gains.end() ? 0 : it->second;
  return shift_apply(n, x, q);
}

struct OneBlock {
  std::vector<TraceStep> steps;
  std::vector<BitSignal> combined;  // per expanded node (sources: zero)
  std::vector<BitSignal> isolated;
};

OneBlock run_block(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a, int q,
                   const GainMap& gains, const std::vector<BitSignal>& snap) {
  OneBlock ob;
  int n = net.num_nodes();
  for (int t = 0; t < a.num_colors; ++t) {
    TraceStep st;
    st.transmitted.assign(n, BitSignal::zero(q));
    st.received.assign(n, BitSignal::zero(q));
    for (const auto& [base, mem] : g.supernodes())
      for (auto [sym, coef] : transmit_terms(g, a, mem.front(), t, 1))
        if (coef & 1) st.transmitted[base] ^= snap[sym];
    for (const Edge& e : net.edges()) st.received[e.second] ^= gain_at(gains, e, st.transmitted[e.first], q);
    ob.steps.push_back(std::move(st));
  }
  ob.combined.assign(g.size(), BitSignal::zero(q));
  ob.isolated.assign(g.size(), BitSignal::zero(q));
  for (int x = 0; x < g.size(); ++x) {
    if (g.is_source(x)) continue;
    NodeId w = g.node(x).base;
    for (int t : colors_of(a.nodes[x].receive)) ob.combined[x] ^= ob.steps[t].received[w];
    for (int y : pair_neighbors(g, x)) ob.isolated[x] ^= gain_at(gains, {g.node(y).base, w}, snap[y], q);
  }
  return ob;
}

}  // namespace

SimulationTrace deterministic_simulate(const LayeredNetwork& net, const RouteExpandedGraph& g,
                                       const ColorAssignment& a, int q, const GainMap& gains,
                                       const std::vector<BitSignal>& snapshot) {
  validate_structure(g, a);
  check_c1_guard(g, a);
  if (static_cast<int>(snapshot.size()) != g.size())
    throw Error(Errc::BadParams, "snapshot must have one signal per expanded node");
  for (const auto& [e, n] : gains)
    if (n < 0 || n > q) throw Error(Errc::GainExceedsQ, "gain " + std::to_string(n) + " > q=" + std::to_string(q));
  SimulationTrace tr;
  tr.q = q;
  OneBlock ob = run_block(net, g, a, q, gains, snapshot);
  tr.steps = std::move(ob.steps);
  for (int x = 0; x < g.size(); ++x) {
    if (g.is_source(x)) continue;
    bool eq = ob.combined[x] == ob.isolated[x];
    tr.equality.push_back({x, ob.combined[x], ob.isolated[x], eq});
    tr.all_equal = tr.all_equal && eq;
  }
  return tr;
}

TrialSummary run_random_trials(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a,
                               int q, int trials, std::uint64_t seed) {
  TrialSummary s{seed, trials, 0, -1};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int k = 0; k < trials; ++k) {
    GainMap gains = random_gains(net, q, rng);
    std::vector<BitSignal> snap;
    for (int x = 0; x < g.size(); ++x) snap.emplace_back(q, bits(rng));
    if (deterministic_simulate(net, g, a, q, gains, snap).all_equal) {
      ++s.passed;
    } else if (s.first_failure < 0) {
      s.first_failure = k;
    }
  }
  return s;
}

std::string dump_trace(const LayeredNetwork& net, const RouteExpandedGraph& g, const SimulationTrace& t) {
  std::ostringstream os;
  os << "q " << t.q << " seed " << t.seed << "\n";
  for (size_t k = 0; k < t.steps.size(); ++k) {
    os << "instant " << k << "\n";
    for (int v = 0; v < net.num_nodes(); ++v)
      os << "  " << net.name(v) << " tx=" << t.steps[k].transmitted[v].hex()
         << " rx=" << t.steps[k].received[v].hex() << "\n";
  }
  for (const NodeEquality& e : t.equality)
    os << "eq " << g.label(e.node) << " combined=" << e.combined.hex() << " isolated=" << e.isolated.hex() << " "
       << (e.equal ? "ok" : "FAIL") << "\n";
  return os.str();
}

RelayInput::RelayInput(int node, int block, BitSignal combined, ColorSet receive,
                       const std::vector<BitSignal>* slots)
    : node_(node), block_(block), combined_(combined), receive_(receive), slots_(slots) {}

const BitSignal& RelayInput::slot(int color) const {
  if (!has(receive_, color))
    throw Error(Errc::StrategyArity, "color " + std::to_string(color) + " is not in the receive set");
  if (!slots_) throw Error(Errc::StrategyArity, "per-instant signals are not available in the isolated oracle");
  return slots_->at(color);
}

BlockTrace block_simulate(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a, int q,
                          const GainMap& gains, int num_blocks, const RelayStrategy& strategy, std::uint64_t seed) {
  validate_structure(g, a);
  check_c1_guard(g, a);
  if (num_blocks < 1) throw Error(Errc::BadParams, "need at least one block");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> bits;
  BlockTrace out;

  // Network side and isolated side keep separate relay states; they only
  // agree if every relay's view matches its isolated counterpart.
  std::vector<BitSignal> net_in(g.size(), BitSignal::zero(q)), iso_in(g.size(), BitSignal::zero(q));
  std::vector<std::vector<BitSignal>> prev_slots(net.num_nodes());
  for (int b = 0; b < num_blocks; ++b) {
    std::vector<BitSignal> net_tx(g.size(), BitSignal::zero(q)), iso_tx(g.size(), BitSignal::zero(q));
    for (int x = 0; x < g.size(); ++x) {
      if (g.is_destination(x)) continue;
      if (g.is_source(x)) {
        net_tx[x] = iso_tx[x] = BitSignal(q, bits(rng));
      } else if (b > 0) {
        net_tx[x] = strategy(RelayInput(x, b - 1, net_in[x], a.nodes[x].receive, &prev_slots[g.node(x).base]));
        iso_tx[x] = strategy(RelayInput(x, b - 1, iso_in[x], a.nodes[x].receive, nullptr));
      }
    }
    OneBlock nb = run_block(net, g, a, q, gains, net_tx);
    OneBlock ib = run_block(net, g, a, q, gains, iso_tx);
    std::vector<NodeEquality> eqs;
    for (int x = 0; x < g.size(); ++x) {
      if (g.is_source(x)) continue;
      bool eq = nb.combined[x] == ib.isolated[x];
      eqs.push_back({x, nb.combined[x], ib.isolated[x], eq});
      out.all_equal = out.all_equal && eq;
    }
    out.blocks.push_back(std::move(eqs));
    net_in = nb.combined;
    iso_in = ib.isolated;
    for (int v = 0; v < net.num_nodes(); ++v) {
      prev_slots[v].clear();
      for (const TraceStep& st : nb.steps) prev_slots[v].push_back(st.received[v]);
    }
  }
  return out;
}

}  // namespace clnet
