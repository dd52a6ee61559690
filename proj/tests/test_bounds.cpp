#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "clnet/bounds.hpp"
#include "clnet/channel.hpp"

using namespace clnet;
using fixture::S;

namespace {

bool verified(const LayeredNetwork& net, const RouteExpandedGraph& g, const ColorAssignment& a) {
  return symbolic_verify(net, g, a, ChannelMode::deterministic).ok &&
         symbolic_verify(net, g, a, ChannelMode::gaussian).ok;
}

const SchemeRow* row(const GainReport& r, const std::string& name) {
  for (const SchemeRow& s : r.rows)
    if (s.scheme == name) return &s;
  return nullptr;
}

K22KPattern random_pattern(std::mt19937_64& rng, int k, int m) {
  K22KPattern p;
  p.k = k;
  auto mask = [&] { return static_cast<unsigned>(1 + rng() % 3); };
  for (int i = 0; i < k; ++i) p.sources.push_back(mask());
  for (int h = 0; h + 1 < m; ++h) p.middle.push_back({mask(), mask()});
  for (int i = 0; i < k; ++i) p.destinations.push_back(mask());
  return p;
}

}  // namespace

TEST_CASE("cross-path bound and witness") {
  LayeredNetwork net = example_two_relay();
  BoundResult b = upper_bound(net);
  CHECK(b.alpha_upper == Rational(1, 2));
  CHECK(b.rule == BoundRule::lemma1_cross_path);
  REQUIRE(b.witness);
  const Witness& w = *b.witness;
  CHECK(w.i != w.j);
  CHECK(oracle::brute_subgraph_nodes(net, w.i, w.j).count(w.v_star));
  CHECK(oracle::brute_subgraph_nodes(net, w.j, w.j).count(w.v_star));

  for (PairId i = 1; i <= 3; ++i)
    for (PairId j = 1; j <= 3; ++j) {
      if (i == j || oracle::brute_routes(net, i, j).empty()) continue;
      Witness x = witness_lemma1(net, i, j);
      CHECK(oracle::brute_subgraph_nodes(net, i, j).count(x.v_star));
      CHECK(oracle::brute_subgraph_nodes(net, j, j).count(x.v_star));
      CHECK(x.high.size() == net.edges().size());
    }
  auto code = [&](PairId i, PairId j) {
    try {
      witness_lemma1(net, i, j);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::BadParams;
  };
  CHECK(code(1, 3) == Errc::NoCrossPath);
  CHECK(code(2, 2) == Errc::NoCrossPath);

  CHECK(upper_bound(example_per_layer()).alpha_upper == Rational(1, 2));
  BoundResult single = upper_bound(build_network({{0}, {1}, {2}}, {{0, 1}, {1, 2}}));
  CHECK(single.alpha_upper == Rational(1));
  CHECK(single.rule == BoundRule::none_applicable);
  CHECK(upper_bound(build_network({{0, 1}, {2, 3}}, {{0, 2}, {1, 3}})).alpha_upper == Rational(1));
}

TEST_CASE("family bounds") {
  for (int k = 1; k <= 7; ++k)
    for (int m = 1; m <= k; ++m) {
      BoundResult s = upper_bound(gen_folded_single(k, m));
      CHECK(s.alpha_upper == Rational(1, m));
      CHECK(s.rule == BoundRule::lemma3_folded);
      BoundResult t = upper_bound(gen_folded_two_layer(k, m));
      CHECK(t.alpha_upper == Rational(1, m));
      CHECK(t.rule == BoundRule::thm4_two_layer_folded);
    }
  BoundResult ni = upper_bound(gen_k22k(parse_k22k_pattern("3121/12/1213")));
  CHECK(ni.rule == BoundRule::thm2_noninterfering);
  CHECK(ni.alpha_upper == Rational(1, 3));
  BoundResult in = upper_bound(gen_k22k(parse_k22k_pattern("3121/33/1213")));
  CHECK(in.rule == BoundRule::thm2_interfering);
  CHECK(in.alpha_upper == Rational(1, 4));
  CHECK(upper_bound(gen_k22k(parse_k22k_pattern("3/3"))).alpha_upper == Rational(1));
  CHECK(upper_bound(gen_nested(2)).alpha_upper == Rational(1, 2));
}

TEST_CASE("k22k construction meets the bound") {
  std::mt19937_64 rng(3);
  int non_interfering = 0, interfering = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int k = 1 + static_cast<int>(rng() % 5), m = 1 + static_cast<int>(rng() % 3);
    LayeredNetwork net = gen_k22k(random_pattern(rng, k, m));
    RouteExpandedGraph g = expand(net);
    if (!g.all_routable()) continue;
    ColorAssignment a = construct_thm2_coloring(net, g);
    CHECK(check_coloring(g, a).valid);
    CHECK(verified(net, g, a));
    Rational want = is_non_interfering_k22k(net) ? Rational(1, std::max(1, k == 1 ? 1 : degrees(net).d_max))
                                                 : Rational(1, k);
    CHECK(achievable_alpha(g, a) == want);
    CHECK(upper_bound(net).alpha_upper == want);
    (is_non_interfering_k22k(net) ? non_interfering : interfering)++;
  }
  CHECK(non_interfering > 10);
  CHECK(interfering > 10);
  CHECK_THROWS_AS(construct_thm2_coloring(gen_folded_single(3, 2), expand(gen_folded_single(3, 2))), Error);
}

TEST_CASE("single-layer folded constructions") {
  for (int k = 1; k <= 7; ++k)
    for (int m = 1; m <= k; ++m) {
      CAPTURE(k);
      CAPTURE(m);
      LayeredNetwork net = gen_folded_single(k, m);
      RouteExpandedGraph g = expand(net);
      ColorAssignment a = construct_folded_single_coloring(k, m);
      CHECK(a.num_colors == m);
      CHECK(check_coloring(g, a).valid);
      CHECK(verified(net, g, a));
      CHECK(oracle::coloring_ok(g, a));
    }
  // In the 3-pair, 2-color case source 2 repeats its symbol.
  RouteExpandedGraph g = expand(gen_folded_single(3, 2));
  ColorAssignment a = construct_folded_single_coloring(3, 2);
  CHECK(a.nodes[*g.index(1, 2)].transmit == S({0, 1}));
}

TEST_CASE("two-layer folded constructions") {
  for (int k = 1; k <= 6; ++k)
    for (int m : {1, 2, k - 1, k}) {
      if (m < 1 || m > k) continue;
      CAPTURE(k);
      CAPTURE(m);
      LayeredNetwork net = gen_folded_two_layer(k, m);
      RouteExpandedGraph g = expand(net);
      ColorAssignment a = construct_folded_two_layer_coloring(k, m);
      CHECK(a.num_colors == m);
      CHECK(check_coloring(g, a).valid);
      CHECK(verified(net, g, a));
      CHECK(upper_bound(net).alpha_upper == achievable_alpha(g, a));
    }
  RouteExpandedGraph g = expand(gen_folded_two_layer(3, 2));
  ColorAssignment a = construct_folded_two_layer_coloring(3, 2);
  bool coded = false;
  for (const NodeColors& c : a.nodes) coded |= c.coding != 0;
  CHECK(coded);
  try {
    construct_folded_two_layer_coloring(6, 3);
    FAIL("expected UnsupportedM");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedM);
  }
}

TEST_CASE("nested product schedule") {
  for (int l = 1; l <= 3; ++l) {
    ColorAssignment a = construct_nested_schedule(l);
    CHECK(a.num_colors == (1 << l));
    for (auto cross : {NestedCross::matching, NestedCross::complete}) {
      LayeredNetwork net = gen_nested(l, cross);
      RouteExpandedGraph g = expand(net);
      CHECK(verified(net, g, a));
      CHECK(run_random_trials(net, g, a, 4, 20, 1).passed == 20);
      if (l == 1) CHECK(check_coloring(g, a).valid);
    }
  }
  // Two-level slot membership, sources numbered 1..9.
  LayeredNetwork net = gen_nested(2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = construct_nested_schedule(2);
  std::vector<std::set<int>> slots(4);
  for (PairId i = 1; i <= 9; ++i)
    for (int c : colors_of(a.nodes[*g.index(net.source(i), i)].transmit)) slots[c].insert(i);
  CHECK(slots[0] == std::set<int>{1, 2, 4, 5});
  CHECK(slots[1] == std::set<int>{2, 3, 5, 6});
  CHECK(slots[2] == std::set<int>{4, 5, 7, 8});
  CHECK(slots[3] == std::set<int>{5, 6, 8, 9});
}

TEST_CASE("gain reports") {
  GainReport r6 = gain_report(example_per_layer());
  CHECK(row(r6, "end-to-end")->alpha == Rational(1, 3));
  CHECK(row(r6, "mil")->alpha == Rational(1, 2));
  CHECK(row(r6, "mil")->tight);
  CHECK(r6.bound.alpha_upper == Rational(1, 2));
  CHECK(row(r6, "constructive") == nullptr);

  GainReport one = gain_report(build_network({{0}, {1}}, {{0, 1}}));
  for (const SchemeRow& s : one.rows) CHECK(s.alpha == Rational(1));
  CHECK(one.mcl_over_mil == Rational(1));

  GainReport fc = gain_report(gen_folded_single(3, 2));
  CHECK(row(fc, "mil")->colors == 3);
  CHECK(row(fc, "mcl")->colors == 2);
  CHECK(row(fc, "constructive")->tight);
  CHECK(fc.mcl_over_mil == Rational(3, 2));
  std::string text = format_report_text(fc);
  CHECK(text.find("scheme") == 0);
  CHECK(text.find("constructive") != std::string::npos);
  CHECK(text.find("bound 1/2 (lemma3_folded)") != std::string::npos);

  GainReport dense = gain_report(gen_nested(2, NestedCross::complete), 20000);
  CHECK(row(dense, "mil")->colors == 9);
  CHECK(row(dense, "constructive")->colors == 4);
  CHECK(row(dense, "constructive")->symbolic_valid);
  CHECK(dense.mcl_over_mil == Rational(9, 4));

  GainReport sparse = gain_report(gen_nested(2));
  CHECK(row(sparse, "mil")->colors == 3);
  CHECK(row(sparse, "mcl")->colors == 2);
  CHECK(row(sparse, "mcl")->checker_valid);
  CHECK(sparse.mcl_over_mil == Rational(3, 2));
}

TEST_CASE("achieved rates never exceed the bound") {
  std::mt19937_64 rng(19);
  std::vector<LayeredNetwork> corpus{example_two_relay(), example_per_layer(), gen_folded_single(4, 2),
                                     gen_folded_two_layer(4, 3), gen_nested(1)};
  for (int trial = 0; trial < 30; ++trial) corpus.push_back(fixture::random_small(rng));
  for (const LayeredNetwork& net : corpus) {
    GainReport r = gain_report(net, 200000);
    for (const SchemeRow& s : r.rows)
      if (s.checker_valid || s.symbolic_valid) CHECK(s.alpha <= r.bound.alpha_upper);
  }
}
