#include "cli_app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clnet/bounds.hpp"
#include "clnet/channel.hpp"
#include "clnet/topology.hpp"
#include "json.hpp"

namespace clnet::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot write " + path);
  f << text;
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(Errc::BadParams, "bad layer size '" + tok + "'");
    }
  }
  return out;
}

json violations_json(const RouteExpandedGraph& g, const ValidityReport& r) {
  json v = json::array();
  for (const Violation& x : r.violations)
    v.push_back({{"condition", condition_name(x.condition)}, {"node", g.label(x.node)}, {"detail", x.detail}});
  return v;
}

json verify_json(const RouteExpandedGraph& g, const VerifyReport& r) {
  json f = json::array();
  for (const VerifyFailure& x : r.failures)
    f.push_back({{"kind", failure_name(x.kind)}, {"node", g.label(x.node)}, {"detail", x.detail}});
  json w = json::object();
  for (const auto& [node, m] : r.weights) {
    json per = json::object();
    for (auto [c, s] : m) per[std::to_string(c)] = s;
    w[g.label(node)] = per;
  }
  return {{"ok", r.ok}, {"failures", f}, {"weights", w}};
}

struct Options {
  std::string format = "text";
  // gen
  std::string family, pattern, sizes = "3,3,3", cross = "matching";
  int k = 3, m = 2, l = 1;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string output;
  // color / verify / simulate / bound / report
  std::string net_path, coloring_path, strategy = "mcl";
  int max_colors = 0;
  std::uint64_t budget = kDefaultBudget;
  bool literal = false;
  int q = 5, trials = 100;
  bool trace = false;
};

int do_gen(const Options& o, std::ostream& out) {
  LayeredNetwork net = [&] {
    const std::string& f = o.family;
    if (f == "folded-single") return gen_folded_single(o.k, o.m);
    if (f == "folded-two-layer") return gen_folded_two_layer(o.k, o.m);
    if (f == "nested") return gen_nested(o.l, o.cross == "complete" ? NestedCross::complete : NestedCross::matching);
    if (f == "k22k") {
      if (o.pattern.empty()) throw Error(Errc::BadPattern, "k22k needs --pattern");
      return gen_k22k(parse_k22k_pattern(o.pattern));
    }
    if (f == "random") return gen_random(parse_sizes(o.sizes), o.p, o.seed);
    if (f == "two-relay") return example_two_relay();
    if (f == "per-layer") return example_per_layer();
    throw Error(Errc::BadParams, "unknown family '" + f + "'");
  }();
  emit(write_network(net), o.output, out);
  return kOk;
}

int do_color(const Options& o, std::ostream& out, std::ostream& err) {
  LayeredNetwork net = load_network(o.net_path);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a;
  const std::string& s = o.strategy;
  if (s == "mcl") {
    int t_max = o.max_colors > 0 ? o.max_colors : std::max(1, net.num_pairs());
    SearchResult r = search_mcl(g, t_max, o.budget);
    if (!r.coloring) {
      err << "error: InvalidColoring: no coloring with T <= " << t_max << "\n";
      return kVerifyFailed;
    }
    if (r.exhausted)
      err << "note: budget exhausted at T=" << r.first_unknown << "; falling back to T=" << r.num_colors << "\n";
    a = *r.coloring;
  } else if (s == "mil") {
    a = search_mil(g);
  } else if (s == "e2e") {
    a = search_end_to_end(g);
  } else if (s == "tdma") {
    a = tdma(g);
  } else if (s == "constructive") {
    a = construct_for_family(net, g);
  } else {
    throw Error(Errc::BadParams, "unknown strategy '" + s + "'");
  }
  emit(write_coloring(g, a), o.output, out);
  return kOk;
}

int do_verify(const Options& o, std::ostream& out) {
  LayeredNetwork net = load_network(o.net_path);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = parse_coloring(g, read_file(o.coloring_path));
  ValidityReport chk = check_coloring(g, a, {o.literal});
  VerifyReport det = symbolic_verify(net, g, a, ChannelMode::deterministic);
  VerifyReport gau = symbolic_verify(net, g, a, ChannelMode::gaussian);
  bool ok = chk.valid && det.ok && gau.ok;

  if (o.format == "json") {
    json j = {{"T", a.num_colors},
              {"alpha", format_rational(Rational(1, a.num_colors))},
              {"checker", {{"valid", chk.valid},
                           {"mode", o.literal ? "literal" : "strict"},
                           {"independent_layer", chk.is_independent_layer},
                           {"violations", violations_json(g, chk)}}},
              {"deterministic", verify_json(g, det)},
              {"gaussian", verify_json(g, gau)}};
    out << j.dump(2) << "\n";
  } else {
    out << "T=" << a.num_colors << " alpha=" << format_rational(Rational(1, a.num_colors)) << "\n";
    out << "checker (" << (o.literal ? "literal" : "strict") << "): " << (chk.valid ? "pass" : "fail")
        << (chk.is_independent_layer ? " [independent layer]" : "") << "\n";
    for (int c = 0; c < 6; ++c) {
      int n = 0;
      for (const Violation& v : chk.violations) n += static_cast<int>(v.condition) == c;
      out << "  C" << c + 1 << " " << (n == 0 ? "pass" : "fail (" + std::to_string(n) + ")") << "\n";
    }
    for (const Violation& v : chk.violations)
      out << "  " << condition_name(v.condition) << " at " << g.label(v.node) << ": " << v.detail << "\n";
    for (auto [name, rep] : {std::pair{"deterministic", &det}, std::pair{"gaussian", &gau}}) {
      out << "symbolic " << name << ": " << (rep->ok ? "pass" : "fail") << "\n";
      for (const VerifyFailure& f : rep->failures)
        out << "  " << failure_name(f.kind) << " at " << g.label(f.node) << ": " << f.detail << "\n";
    }
  }
  return ok ? kOk : kVerifyFailed;
}

int do_simulate(const Options& o, std::ostream& out) {
  LayeredNetwork net = load_network(o.net_path);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = parse_coloring(g, read_file(o.coloring_path));
  if (o.q < 1 || o.q > 64) throw Error(Errc::BadParams, "q must be in 1..64");
  if (o.trials < 1) throw Error(Errc::BadParams, "trials must be positive");
  TrialSummary s = run_random_trials(net, g, a, o.q, o.trials, o.seed);
  if (o.format == "json") {
    out << json{{"seed", s.seed}, {"q", o.q}, {"trials", s.trials}, {"passed", s.passed},
                {"first_failure", s.first_failure}}.dump(2)
        << "\n";
  } else {
    out << "seed " << s.seed << " q " << o.q << " trials " << s.trials << " passed " << s.passed;
    if (s.first_failure >= 0) out << " first_failure " << s.first_failure;
    out << "\n";
  }
  if (o.trace) {
    // Replay the first draw of the same stream so the trace matches trial 0.
    std::mt19937_64 rng(o.seed);
    GainMap gains = random_gains(net, o.q, rng);
    std::uniform_int_distribution<std::uint64_t> bits;
    std::vector<BitSignal> snap;
    for (int x = 0; x < g.size(); ++x) snap.emplace_back(o.q, bits(rng));
    SimulationTrace t = deterministic_simulate(net, g, a, o.q, gains, snap);
    t.seed = o.seed;
    out << dump_trace(net, g, t);
  }
  return s.passed == s.trials ? kOk : kVerifyFailed;
}

int do_bound(const Options& o, std::ostream& out) {
  LayeredNetwork net = load_network(o.net_path);
  BoundResult b = upper_bound(net);
  if (o.format == "json") {
    json j = {{"alpha_upper", format_rational(b.alpha_upper)}, {"rule", rule_name(b.rule)}};
    if (b.witness) {
      json high = json::array();
      for (const auto& [e, h] : b.witness->high)
        if (h) high.push_back({net.name(e.first), net.name(e.second)});
      j["witness"] = {{"i", b.witness->i}, {"j", b.witness->j}, {"v_star", net.name(b.witness->v_star)},
                      {"high_edges", high}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << "alpha_upper " << format_rational(b.alpha_upper) << " rule " << rule_name(b.rule) << "\n";
    if (b.witness) {
      out << "witness i=" << b.witness->i << " j=" << b.witness->j << " v*=" << net.name(b.witness->v_star)
          << " high:";
      for (const auto& [e, h] : b.witness->high)
        if (h) out << " " << net.name(e.first) << "->" << net.name(e.second);
      out << "\n";
    }
  }
  return kOk;
}

int do_report(const Options& o, std::ostream& out) {
  LayeredNetwork net = load_network(o.net_path);
  GainReport r = gain_report(net, o.budget);
  if (o.format == "json") {
    json rows = json::array();
    for (const SchemeRow& s : r.rows)
      rows.push_back({{"scheme", s.scheme}, {"T", s.colors}, {"alpha", format_rational(s.alpha)},
                      {"checker_valid", s.checker_valid}, {"symbolic_valid", s.symbolic_valid},
                      {"upper_bound_only", s.upper_bound_only}, {"tight", s.tight}});
    out << json{{"rows", rows},
                {"bound", format_rational(r.bound.alpha_upper)},
                {"rule", rule_name(r.bound.rule)},
                {"mcl_over_mil", format_rational(r.mcl_over_mil)}}.dump(2)
        << "\n";
  } else {
    out << format_report_text(r);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded layer scheduling toolkit", "clnet"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto* gen = app.add_subcommand("gen", "Generate a network descriptor");
  gen->add_option("family", o.family,
                  "folded-single | folded-two-layer | nested | k22k | random | two-relay | per-layer")
      ->required();
  gen->add_option("--k", o.k, "Number of pairs");
  gen->add_option("--m", o.m, "Folded-chain width");
  gen->add_option("--l", o.l, "Nesting depth");
  gen->add_option("--cross", o.cross, "Nested: cross-copy links")->check(CLI::IsMember({"matching", "complete"}));
  gen->add_option("--pattern", o.pattern, "k22k relay pattern, e.g. 312/32/11/123");
  gen->add_option("--sizes", o.sizes, "Random: comma-separated layer sizes");
  gen->add_option("--p", o.p, "Random: edge probability");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* color = app.add_subcommand("color", "Compute a coloring");
  color->add_option("net", o.net_path)->required();
  color->add_option("--strategy", o.strategy)->check(CLI::IsMember({"mcl", "mil", "e2e", "tdma", "constructive"}));
  color->add_option("--max-colors", o.max_colors, "Search limit on T (default K)");
  color->add_option("--budget", o.budget, "Search node-expansion budget");
  color->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a coloring and verify it symbolically");
  verify->add_option("net", o.net_path)->required();
  verify->add_option("coloring", o.coloring_path)->required();
  verify->add_flag("--literal", o.literal, "Literal C6 (skip the multiplicity checks)");

  auto* sim = app.add_subcommand("simulate", "Random deterministic-model trials");
  sim->add_option("net", o.net_path)->required();
  sim->add_option("coloring", o.coloring_path)->required();
  sim->add_option("--q", o.q, "Signal width in bits");
  sim->add_option("--trials", o.trials);
  sim->add_option("--seed", o.seed);
  sim->add_flag("--trace", o.trace, "Dump the first trial's trace");

  auto* bound = app.add_subcommand("bound", "Upper bound on the normalized sum-rate");
  bound->add_option("net", o.net_path)->required();

  auto* report = app.add_subcommand("report", "Compare schemes against the bound");
  report->add_option("net", o.net_path)->required();
  report->add_option("--budget", o.budget, "Search node-expansion budget");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: BadArguments: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*gen) return do_gen(o, out);
    if (*color) return do_color(o, out, err);
    if (*verify) return do_verify(o, out);
    if (*sim) return do_simulate(o, out);
    if (*bound) return do_bound(o, out);
    if (*report) return do_report(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace clnet::cli
