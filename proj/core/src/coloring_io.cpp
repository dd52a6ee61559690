#include <algorithm>
#include <map>
#include <sstream>

#include "clnet/coloring.hpp"

namespace clnet {

std::string write_coloring(const RouteExpandedGraph& g, const ColorAssignment& a) {
  std::ostringstream os;
  os << "T=" << a.num_colors << "\n";
  for (int x = 0; x < g.size(); ++x) {
    const NodeColors& c = a.nodes.at(x);
    os << g.label(x) << " T=" << format_set(c.transmit) << " C=" << format_set(c.coding)
       << " R=" << format_set(c.receive) << "\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(Errc::MalformedAssignment, "line " + std::to_string(line) + ": " + what);
}

ColorSet parse_set(const std::string& s, int num_colors, int line) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') bad(line, "expected {..}, got '" + s + "'");
  ColorSet out = 0;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) bad(line, "empty color in '" + s + "'");
    size_t used = 0;
    int c = -1;
    try {
      c = std::stoi(tok, &used);
    } catch (const std::exception&) {
      bad(line, "bad color '" + tok + "'");
    }
    if (used != tok.size() || c < 0) bad(line, "bad color '" + tok + "'");
    if (c >= num_colors) bad(line, "color " + tok + " >= T");
    out |= bit(c);
  }
  return out;
}

}  // namespace

ColorAssignment parse_coloring(const RouteExpandedGraph& g, const std::string& text) {
  ColorAssignment a;
  std::map<std::string, int> by_label;
  for (int x = 0; x < g.size(); ++x) by_label[g.label(x)] = x;
  std::vector<bool> seen(g.size(), false);

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 1 || tok[0].rfind("T=", 0) != 0) bad(lineno, "expected 'T=<n>' header");
      try {
        a.num_colors = std::stoi(tok[0].substr(2));
      } catch (const std::exception&) {
        bad(lineno, "bad header");
      }
      if (a.num_colors < 1 || a.num_colors > kMaxColors) bad(lineno, "T must be in 1..64");
      a.nodes.assign(g.size(), {});
      header = true;
      continue;
    }
    auto it = by_label.find(tok[0]);
    if (it == by_label.end()) bad(lineno, "unknown expanded node '" + tok[0] + "'");
    if (seen[it->second]) bad(lineno, "duplicate node '" + tok[0] + "'");
    seen[it->second] = true;
    NodeColors& c = a.nodes[it->second];
    bool got[3] = {false, false, false};
    for (size_t k = 1; k < tok.size(); ++k) {
      const std::string& t = tok[k];
      if (t.size() < 2 || t[1] != '=') bad(lineno, "expected T=, C= or R=, got '" + t + "'");
      int slot = t[0] == 'T' ? 0 : t[0] == 'C' ? 1 : t[0] == 'R' ? 2 : -1;
      if (slot < 0 || got[slot]) bad(lineno, "unexpected field '" + t + "'");
      got[slot] = true;
      ColorSet s = parse_set(t.substr(2), a.num_colors, lineno);
      (slot == 0 ? c.transmit : slot == 1 ? c.coding : c.receive) = s;
    }
  }
  if (!header) throw Error(Errc::MalformedAssignment, "missing 'T=<n>' header");
  for (int x = 0; x < g.size(); ++x)
    if (!seen[x]) throw Error(Errc::MalformedAssignment, "no entry for " + g.label(x));
  validate_structure(g, a);
  return a;
}

}  // namespace clnet
