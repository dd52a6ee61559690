#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "clnet/search.hpp"

using namespace clnet;
using fixture::S;

TEST_CASE("single-layer chain schedule") {
  LayeredNetwork net = gen_folded_single(3, 2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = fixture::single_layer_schedule(g);
  int d3 = *g.index(net.destination(3), 3);
  CHECK(effective_receive_set(g, a, d3) == S({1}));
  InterfererSet is = interferers(g, a, d3);
  REQUIRE(is.interferers.size() == 1);
  CHECK(g.label(is.interferers[0]) == "S2:2");
  CHECK(shared_interferer_color(g, a, d3) == 0);
  ValidityReport r = check_coloring(g, a);
  CHECK(r.valid);
  CHECK_FALSE(r.is_independent_layer);
  CHECK(achievable_alpha(g, a) == Rational(1, 2));

  ColorAssignment empty = a;
  at(g, empty, "D3", 3).receive = 0;
  CHECK(effective_receive_set(g, empty, d3) == 0);
}

TEST_CASE("end-to-end coloring of the two-relay example has no interferers") {
  LayeredNetwork net = example_two_relay();
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = search_end_to_end(g);
  for (int x = 0; x < g.size(); ++x) CHECK(interferers(g, a, x).interferers.empty());
  ValidityReport r = check_coloring(g, a);
  CHECK(r.valid);
  CHECK(r.is_independent_layer);
}

TEST_CASE("mutations are rejected") {
  LayeredNetwork net = gen_folded_single(3, 2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = fixture::single_layer_schedule(g);
  at(g, a, "S2", 2).transmit = S({1});
  ValidityReport r = check_coloring(g, a);
  REQUIRE_FALSE(r.valid);
  bool c6_at_d3 = false;
  for (const auto& v : r.violations) c6_at_d3 |= v.condition == Condition::C6 && g.label(v.node) == "D3:3";
  CHECK(c6_at_d3);
  CHECK_THROWS_AS(achievable_alpha(g, a), Error);

  CHECK_FALSE(check_coloring(g, a, {true}).valid);

  ColorAssignment shrunk = fixture::single_layer_schedule(g);
  at(g, shrunk, "D3", 3).receive = S({0});
  ValidityReport r2 = check_coloring(g, shrunk);
  bool c5 = false;
  for (const auto& v : r2.violations) c5 |= v.condition == Condition::C5;
  CHECK(c5);
}

TEST_CASE("strict mode rejects a receive set that sums in a non-interferer") {
  // S2 also reaches D1. Widening D1's receive set to S2's slot adds X2 to the
  // sum; the literal reading sees no interferer and lets it through.
  LayeredNetwork net = build_network({{0, 1}, {2, 3}}, {{0, 2}, {1, 2}, {1, 3}});
  RouteExpandedGraph g = expand(net);
  ColorAssignment a{2, std::vector<NodeColors>(g.size())};
  a.nodes[*g.index(0, 1)].transmit = S({0});
  a.nodes[*g.index(1, 2)].transmit = S({1});
  a.nodes[*g.index(2, 1)].receive = S({0});
  a.nodes[*g.index(3, 2)].receive = S({1});
  CHECK(check_coloring(g, a).valid);
  a.nodes[*g.index(2, 1)].receive = S({0, 1});
  CHECK(check_coloring(g, a, {true}).valid);
  ValidityReport r = check_coloring(g, a);
  REQUIRE_FALSE(r.valid);
  CHECK(r.violations.front().condition == Condition::C6);
}

TEST_CASE("supernode conditions") {
  LayeredNetwork net = gen_folded_two_layer(3, 2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment base = fixture::two_layer_schedule(g);
  CHECK(check_coloring(g, base).valid);
  auto first = [&](const ColorAssignment& a) {
    auto r = check_coloring(g, a);
    return r.violations.empty() ? -1 : static_cast<int>(r.violations.front().condition);
  };
  ColorAssignment c1 = base;
  at(g, c1, "B", 2).transmit = S({0, 1});
  CHECK(first(c1) == static_cast<int>(Condition::C1));
  ColorAssignment c2 = base;
  at(g, c2, "A", 3).transmit = S({0, 1});
  at(g, c2, "A", 1).transmit = 0;
  CHECK(first(c2) == static_cast<int>(Condition::C1) + 1);
  ColorAssignment c3 = base;
  at(g, c3, "B", 1).coding = S({1});
  at(g, c3, "B", 2).coding = S({0});
  CHECK(first(c3) == static_cast<int>(Condition::C3));
  ColorAssignment c4 = base;
  at(g, c4, "D3", 3).receive = S({1});
  auto r4 = check_coloring(g, c4);
  CHECK(std::any_of(r4.violations.begin(), r4.violations.end(),
                    [](const Violation& v) { return v.condition == Condition::C4; }));
}

TEST_CASE("structural errors") {
  RouteExpandedGraph g = expand(gen_folded_single(3, 2));
  ColorAssignment a = fixture::single_layer_schedule(g);
  a.nodes[0].transmit = S({5});
  CHECK_THROWS_AS(check_coloring(g, a), Error);
  ColorAssignment b = fixture::single_layer_schedule(g);
  b.nodes.pop_back();
  try {
    check_coloring(g, b);
    FAIL("expected MalformedAssignment");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedAssignment);
  }
}

TEST_CASE("coloring file round trip") {
  RouteExpandedGraph g = expand(gen_folded_two_layer(3, 2));
  ColorAssignment a = fixture::two_layer_schedule(g);
  std::string text = write_coloring(g, a);
  ColorAssignment back = parse_coloring(g, text);
  CHECK(back == a);
  CHECK(write_coloring(g, back) == text);
  CHECK(text.rfind("T=2\nS1:1 T={0} C={} R={}\n", 0) == 0);

  auto code = [&](const std::string& s) {
    try {
      parse_coloring(g, s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::BadParams;
  };
  CHECK(code("S1:1 T={0}\n") == Errc::MalformedAssignment);
  CHECK(code("T=2\n") == Errc::MalformedAssignment);
  std::string bad_color = text;
  bad_color.replace(bad_color.find("T={0}"), 5, "T={7}");
  CHECK(code(bad_color) == Errc::MalformedAssignment);
  CHECK(code(text + "A:1 T={0} C={} R={}\n") == Errc::MalformedAssignment);
  CHECK(parse_coloring(g, "# comment\n" + text) == a);
}

TEST_CASE("checker agrees with the set-based oracle") {
  std::mt19937_64 rng(21);
  int valid_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LayeredNetwork net = fixture::random_small(rng, 8);
    RouteExpandedGraph g = expand(net);
    if (g.size() > 10) continue;
    int t = 1 + static_cast<int>(rng() % 3);
    ColorAssignment a{t, std::vector<NodeColors>(g.size())};
    for (int x = 0; x < g.size(); ++x) {
      if (!g.is_destination(x)) a.nodes[x].transmit = (rng() % low_mask(t)) + 1;
      if (!g.is_source(x)) a.nodes[x].receive = rng() % (low_mask(t) + 1);
      if (!g.is_destination(x) && !g.is_source(x) && rng() % 4 == 0) a.nodes[x].coding = rng() % (low_mask(t) + 1);
    }
    if (rng() % 2) {
      for (int x = 0; x < g.size(); ++x)
        if (auto r = find_receive_set(g, a, x)) a.nodes[x].receive = *r;
    }
    auto sets = oracle::sets_of(a);
    for (int x = 0; x < g.size(); ++x) {
      if (g.is_source(x)) continue;
      std::set<int> lib;
      for (int y : interferers(g, a, x).interferers) lib.insert(y);
      CHECK(lib == oracle::brute_interferers(g, sets, x, sets[x].r));
      CHECK(oracle::as_set(effective_receive_set(g, a, x)) ==
            oracle::meet(sets[x].r, [&] {
              oracle::Set u;
              for (int y : pair_neighbors(g, x)) u = oracle::join(u, oracle::join(sets[y].t, sets[y].c));
              return u;
            }()));
    }
    bool lib = check_coloring(g, a).valid;
    CHECK(lib == oracle::coloring_ok(g, a));
    CHECK(check_coloring(g, a, {true}).valid == oracle::coloring_ok(g, a, false));
    valid_seen += lib;
  }
  CHECK(valid_seen > 0);
}

TEST_CASE("derived receive sets are the smallest valid ones") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    LayeredNetwork net = fixture::random_small(rng, 9);
    RouteExpandedGraph g = expand(net);
    int t = 1 + static_cast<int>(rng() % 3);
    ColorAssignment a{t, std::vector<NodeColors>(g.size())};
    for (int x = 0; x < g.size(); ++x)
      if (!g.is_destination(x)) a.nodes[x].transmit = (rng() % low_mask(t)) + 1;
    auto sets = oracle::sets_of(a);
    for (int x = 0; x < g.size(); ++x) {
      if (g.is_source(x)) continue;
      std::optional<ColorSet> best;
      for (ColorSet r = 0; r <= low_mask(t); ++r)
        if (oracle::receive_ok(g, sets, x, oracle::as_set(r)) &&
            (!best || popcount(r) < popcount(*best) || (popcount(r) == popcount(*best) && r < *best)))
          best = r;
      CHECK(find_receive_set(g, a, x) == best);
    }
  }
}

TEST_CASE("TDMA is valid wherever every pair is routable") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    LayeredNetwork net = fixture::random_small(rng);
    RouteExpandedGraph g = expand(net);
    ColorAssignment a = tdma(g);
    CHECK(a.num_colors == net.num_pairs());
    CHECK(check_coloring(g, a).valid);
  }
  RouteExpandedGraph g4 = expand(gen_folded_single(4, 4));
  CHECK(achievable_alpha(g4, tdma(g4)) == Rational(1, 4));
  RouteExpandedGraph g1 = expand(build_network({{0}, {1}}, {{0, 1}}));
  CHECK(achievable_alpha(g1, tdma(g1)) == Rational(1));
}
