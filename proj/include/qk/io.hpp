#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

// Text format: optional "c <comment>" lines, one "p dg <n> <m>" header, then
// exactly m "e <u> <v>" records with 0-based endpoints. Blank lines are
// skipped anywhere.
inline Digraph parse_instance(std::istream& in) {
  int n = -1;
  long long m = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw ParseError(lineno, "duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt) || fmt != "dg")
        throw ParseError(lineno, "expected 'p dg <n> <m>'");
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw ParseError(lineno, "expected 'p dg <n> <m>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens");
      continue;
    }
    if (tag == "e") {
      if (n < 0) throw ParseError(lineno, "edge before problem line");
      int u, v;
      if (!(ls >> u >> v)) throw ParseError(lineno, "expected 'e <u> <v>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens");
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw ParseError(lineno, "endpoint out of range");
      if (u == v) throw ParseError(lineno, "loop edge");
      edges.push_back({u, v});
      continue;
    }
    throw ParseError(lineno, "unknown record '" + tag + "'");
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(lineno, "edge count mismatch: header says " + std::to_string(m) +
                                 ", found " + std::to_string(edges.size()));
  return Digraph::build(n, edges);
}

inline Digraph parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline Digraph load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_instance(in);
}

inline void serialize_instance(const Digraph& g, std::ostream& out,
                               const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "c " << c << "\n";
  const auto edges = g.edges();
  out << "p dg " << g.order() << " " << edges.size() << "\n";
  for (auto [u, v] : edges) out << "e " << u << " " << v << "\n";
}

inline std::string instance_to_string(const Digraph& g,
                                      const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  serialize_instance(g, out, comments);
  return out.str();
}

inline void save_instance(const Digraph& g, const std::string& path,
                          const std::vector<std::string>& comments = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  serialize_instance(g, out, comments);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

inline void write_dot(const Digraph& g, std::ostream& out,
                      const std::string& name = "g") {
  out << "digraph " << name << " {\n";
  for (int v = 0; v < g.order(); ++v)
    if (g.out_degree(v) == 0 && g.in_degree(v) == 0) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
}

}  // namespace qk
