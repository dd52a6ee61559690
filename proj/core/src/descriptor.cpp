// Network descriptor files: a JSON object with keys
//   layers  [[name, ...], ...]                  required
//   pairs   {"sources": [...], "destinations": [...]}   optional, defaults to layer order
//   edges   [[from, to, gain], ...]             gain: integer n, or "h:<label>"
//   q       integer                             optional
//   family  {"name": str, "k": int, "m": int, "l": int}  optional generator tag
// Any other key is rejected.
#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "clnet/network.hpp"
#include "json.hpp"

namespace clnet {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(Errc::ParseError, msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) parse_fail("unknown key '" + it.key() + "' in " + where);
}

FamilyTag::Kind family_from_name(const std::string& s) {
  for (auto k : {FamilyTag::Kind::none, FamilyTag::Kind::k22k, FamilyTag::Kind::folded_single,
                 FamilyTag::Kind::folded_two_layer, FamilyTag::Kind::nested, FamilyTag::Kind::random})
    if (s == family_name(k)) return k;
  parse_fail("unknown family '" + s + "'");
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) parse_fail(where + " entries must be node names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

LayeredNetwork parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("top level must be an object");
  reject_unknown(doc, {"layers", "pairs", "edges", "q", "family"}, "network");
  if (!doc.contains("layers")) parse_fail("missing 'layers'");

  std::vector<std::vector<std::string>> named;
  if (!doc["layers"].is_array()) parse_fail("'layers' must be a list of lists");
  for (const auto& l : doc["layers"]) named.push_back(string_list(l, "layer"));
  if (named.size() < 2) throw Error(Errc::EmptyNetwork, "need at least two layers");

  if (doc.contains("pairs")) {
    const json& p = doc["pairs"];
    if (!p.is_object()) parse_fail("'pairs' must be an object");
    reject_unknown(p, {"sources", "destinations"}, "pairs");
    auto reorder = [&](const char* key, std::vector<std::string>& layer) {
      if (!p.contains(key)) parse_fail(std::string("pairs.") + key + " missing");
      auto order = string_list(p[key], std::string("pairs.") + key);
      auto a = order, b = layer;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) parse_fail(std::string("pairs.") + key + " must list the nodes of that layer");
      layer = order;
    };
    reorder("sources", named.front());
    reorder("destinations", named.back());
  }

  std::map<std::string, NodeId> id;
  std::vector<std::vector<NodeId>> layers;
  std::vector<std::string> names;
  for (const auto& l : named) {
    layers.emplace_back();
    for (const auto& nm : l) {
      if (id.count(nm)) throw Error(Errc::BadNodeId, "node '" + nm + "' appears twice");
      id[nm] = static_cast<NodeId>(names.size());
      layers.back().push_back(id[nm]);
      names.push_back(nm);
    }
  }

  std::set<Edge> edges;
  std::map<Edge, ChannelGain> gains;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) parse_fail("'edges' must be a list");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_string() || !e[1].is_string())
        parse_fail("edge must be [from, to] or [from, to, gain]");
      auto look = [&](const json& n) {
        auto it = id.find(n.get<std::string>());
        if (it == id.end()) throw Error(Errc::BadNodeId, "unknown node '" + n.get<std::string>() + "'");
        return it->second;
      };
      Edge ed{look(e[0]), look(e[1])};
      if (!edges.insert(ed).second)
        throw Error(Errc::DuplicateEdge, e[0].get<std::string>() + "->" + e[1].get<std::string>());
      if (e.size() == 3) {
        if (e[2].is_number_integer()) {
          long long n = e[2].get<long long>();
          if (n < 0 || n > 64) parse_fail("deterministic gain must be in 0..64");
          gains[ed] = ChannelGain::det(static_cast<int>(n));
        } else if (e[2].is_string() && e[2].get<std::string>().rfind("h:", 0) == 0 &&
                   e[2].get<std::string>().size() > 2) {
          gains[ed] = ChannelGain::gauss(e[2].get<std::string>().substr(2));
        } else {
          parse_fail("gain must be a non-negative integer or \"h:<label>\"");
        }
      }
    }
  }
  int q = 0;
  if (doc.contains("q")) {
    if (!doc["q"].is_number_integer() || doc["q"].get<int>() < 1 || doc["q"].get<int>() > 64)
      parse_fail("q must be an integer in 1..64");
    q = doc["q"].get<int>();
  }
  LayeredNetwork net = build_network(std::move(layers), std::move(edges), std::move(gains), q);
  net.set_names(std::move(names));
  if (doc.contains("family")) {
    const json& f = doc["family"];
    if (!f.is_object()) parse_fail("'family' must be an object");
    reject_unknown(f, {"name", "k", "m", "l", "p", "seed"}, "family");
    FamilyTag t;
    if (!f.contains("name") || !f["name"].is_string()) parse_fail("family.name missing");
    t.kind = family_from_name(f["name"].get<std::string>());
    auto num = [&](const char* k) {
      if (!f.contains(k)) return 0;
      if (!f[k].is_number_integer()) parse_fail(std::string("family.") + k + " must be an integer");
      return f[k].get<int>();
    };
    t.k = num("k");
    t.m = num("m");
    t.l = num("l");
    if (f.contains("p")) {
      if (!f["p"].is_number()) parse_fail("family.p must be a number");
      t.p = f["p"].get<double>();
    }
    if (f.contains("seed")) {
      if (!f["seed"].is_number_unsigned()) parse_fail("family.seed must be a non-negative integer");
      t.seed = f["seed"].get<std::uint64_t>();
    }
    net.set_family(t);
  }
  return net;
}

std::string write_network(const LayeredNetwork& net) {
  auto q = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream os;
  os << "{\n  \"layers\": [";
  for (int li = 0; li < net.num_layers(); ++li) {
    os << (li ? ", " : "") << "[";
    const auto& l = net.layers()[li];
    for (size_t i = 0; i < l.size(); ++i) os << (i ? ", " : "") << q(net.name(l[i]));
    os << "]";
  }
  os << "],\n  \"edges\": [";
  bool first = true;
  for (const auto& e : net.edges()) {
    os << (first ? "\n" : ",\n") << "    [" << q(net.name(e.first)) << ", " << q(net.name(e.second)) << ", ";
    ChannelGain g = net.gain(e);
    if (g.kind == ChannelGain::Kind::deterministic) os << g.n;
    else os << q("h:" + g.label);
    os << "]";
    first = false;
  }
  os << (first ? "" : "\n  ") << "],\n  \"q\": " << net.q();
  const FamilyTag& f = net.family();
  if (f.kind != FamilyTag::Kind::none) {
    os << ",\n  \"family\": {\"name\": " << q(family_name(f.kind)) << ", \"k\": " << f.k
       << ", \"m\": " << f.m << ", \"l\": " << f.l;
    if (f.kind == FamilyTag::Kind::random) os << ", \"p\": " << json(f.p).dump() << ", \"seed\": " << f.seed;
    os << "}";
  }
  os << "\n}\n";
  return os.str();
}

LayeredNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

}  // namespace clnet
