#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

// Small directed pattern searched for as a (not necessarily induced) subgraph:
// an injective vertex map that preserves every pattern edge; extra edges in the
// host are fine.
struct Pattern {
  std::string name;
  int order = 0;
  std::vector<std::pair<int, int>> edges;

  // Directed triangle 0->1->2->0.
  static Pattern directed_triangle() { return {"C3dir", 3, {{0, 1}, {1, 2}, {2, 0}}}; }
  // Two directed 2-paths with a common start and a common end.
  static Pattern four_cycle_two_paths() {
    return {"C4up", 4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}};
  }
  // Directed 3-path 0->1->2->3 closed by the chord 0->3.
  static Pattern four_cycle_one_reversed() {
    return {"C4minus", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  }
  // Two directed 3-paths with a common start and a common end.
  static Pattern six_cycle_two_paths() {
    return {"C6up", 6, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 3}}};
  }
  // Center 0 with d out-edges. Leaf independence is checked separately by
  // find_induced_star; as a plain Pattern this is just the edge set.
  static Pattern star_out(int d) {
    Pattern p{"StarOut", d + 1, {}};
    for (int i = 1; i <= d; ++i) p.edges.emplace_back(0, i);
    return p;
  }

  // The four short-cycle shapes whose absence the bounded-degree machinery needs.
  static const std::vector<Pattern>& forbidden_cycles() {
    static const std::vector<Pattern> all = {
        directed_triangle(), four_cycle_two_paths(), four_cycle_one_reversed(),
        six_cycle_two_paths()};
    return all;
  }
};

// First embedding found by a deterministic backtracking search, as a vector
// indexed by pattern vertex. Pattern vertices are placed most-constrained
// first; candidates are scanned ascending.
inline std::optional<std::vector<int>> find_subgraph(const Digraph& g,
                                                     const Pattern& p) {
  const int k = p.order;
  if (k == 0) return std::vector<int>{};
  if (g.order() < k) return std::nullopt;

  // (other pattern vertex, true when the edge leaves this vertex)
  std::vector<std::vector<std::pair<int, bool>>> nbrs(k);
  for (auto [a, b] : p.edges) {
    nbrs[a].emplace_back(b, true);
    nbrs[b].emplace_back(a, false);
  }

  std::vector<int> order;
  order.reserve(k);
  std::vector<char> placed(k, 0);
  for (int step = 0; step < k; ++step) {
    int best = -1, best_score = -1;
    for (int v = 0; v < k; ++v) {
      if (placed[v]) continue;
      int score = 0;
      if (step == 0) {
        score = static_cast<int>(nbrs[v].size());
      } else {
        for (auto [u, fwd] : nbrs[v]) {
          (void)fwd;
          if (placed[u]) ++score;
        }
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<int> img(k, -1);
  std::vector<char> used(g.order(), 0);
  std::vector<int> all;

  auto dfs = [&](auto&& self, int idx) -> bool {
    if (idx == k) return true;
    int pv = order[idx];
    const std::vector<int>* pool = nullptr;
    for (auto [u, fwd] : nbrs[pv]) {
      if (img[u] < 0) continue;
      // pv->u constrains img[pv] to in(img[u]); u->pv constrains it to out(img[u]).
      const std::vector<int>& lst = fwd ? g.in(img[u]) : g.out(img[u]);
      if (!pool || lst.size() < pool->size()) pool = &lst;
    }
    if (!pool) {
      if (all.empty()) {
        all.resize(g.order());
        std::iota(all.begin(), all.end(), 0);
      }
      pool = &all;
    }
    for (int cand : *pool) {
      if (used[cand]) continue;
      bool ok = true;
      for (auto [u, fwd] : nbrs[pv]) {
        if (img[u] < 0) continue;
        if (fwd ? !g.has_edge(cand, img[u]) : !g.has_edge(img[u], cand)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img[pv] = cand;
      used[cand] = 1;
      if (self(self, idx + 1)) return true;
      img[pv] = -1;
      used[cand] = 0;
    }
    return false;
  };

  if (dfs(dfs, 0)) return img;
  return std::nullopt;
}

struct StarEmbedding {
  int center = -1;
  VertexSet leaves;
};

// Induced out-star with d leaves: a center with d out-neighbors that are
// pairwise non-adjacent (either direction) and send no edge back to the center.
inline std::optional<StarEmbedding> find_induced_star(const Digraph& g, int d) {
  if (d < 2) throw Error("star search needs d >= 2");
  for (int c = 0; c < g.order(); ++c) {
    if (g.out_degree(c) < d) continue;
    std::vector<int> cand;
    for (int u : g.out(c))
      if (!g.has_edge(u, c)) cand.push_back(u);
    if (static_cast<int>(cand.size()) < d) continue;
    std::vector<int> pick;
    auto dfs = [&](auto&& self, size_t idx) -> bool {
      if (static_cast<int>(pick.size()) == d) return true;
      if (cand.size() - idx < d - pick.size()) return false;
      for (size_t i = idx; i < cand.size(); ++i) {
        int u = cand[i];
        bool ok = true;
        for (int w : pick)
          if (g.has_edge(u, w) || g.has_edge(w, u)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        pick.push_back(u);
        if (self(self, i + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (dfs(dfs, 0)) return StarEmbedding{c, pick};
  }
  return std::nullopt;
}

inline std::optional<std::pair<int, int>> find_digon(const Digraph& g) {
  for (int v = 0; v < g.order(); ++v)
    for (int u : g.out(v))
      if (u > v && g.has_edge(u, v)) return std::make_pair(v, u);
  return std::nullopt;
}

inline bool is_oriented(const Digraph& g) { return !find_digon(g).has_value(); }

enum class DigraphClass { Oriented, Sourceless, OutDegree3, StarFree, ShortCycleFree };

// Certificate for class membership. When holds is false, the first violation
// found is attached and re-verifiable against the graph.
struct ClassCertificate {
  std::string class_name;
  int d = 0;
  bool holds = true;
  std::string violation_kind;          // digon | source | out-degree | induced-star | pattern
  std::string violation_pattern;       // pattern name when violation_kind == "pattern"
  std::vector<int> violation_witness;  // vertices involved
};

inline ClassCertificate certify(const Digraph& g, DigraphClass cls, int d = 0) {
  ClassCertificate cert;
  cert.d = d;

  auto check_oriented = [&]() {
    if (auto dg = find_digon(g)) {
      cert.holds = false;
      cert.violation_kind = "digon";
      cert.violation_witness = {dg->first, dg->second};
      return false;
    }
    return true;
  };
  auto check_sourceless = [&]() {
    if (auto s = find_source(g)) {
      cert.holds = false;
      cert.violation_kind = "source";
      cert.violation_witness = {*s};
      return false;
    }
    return true;
  };
  auto check_out_degree = [&](int cap) {
    for (int v = 0; v < g.order(); ++v) {
      if (g.out_degree(v) > cap) {
        cert.holds = false;
        cert.violation_kind = "out-degree";
        cert.violation_witness = {v};
        return false;
      }
    }
    return true;
  };

  switch (cls) {
    case DigraphClass::Oriented:
      cert.class_name = "oriented";
      check_oriented();
      break;
    case DigraphClass::Sourceless:
      cert.class_name = "sourceless";
      check_sourceless();
      break;
    case DigraphClass::OutDegree3:
      cert.class_name = "out-degree-3";
      cert.d = 3;
      if (!check_oriented()) break;
      if (!check_sourceless()) break;
      check_out_degree(3);
      break;
    case DigraphClass::StarFree: {
      cert.class_name = "star-free";
      if (d < 2) throw Error("star-free class needs d >= 2");
      if (!check_sourceless()) break;
      if (auto star = find_induced_star(g, d)) {
        cert.holds = false;
        cert.violation_kind = "induced-star";
        cert.violation_witness.push_back(star->center);
        for (int leaf : star->leaves) cert.violation_witness.push_back(leaf);
      }
      break;
    }
    case DigraphClass::ShortCycleFree: {
      cert.class_name = "short-cycle-free";
      if (d < 2) throw Error("short-cycle-free class needs d >= 2");
      if (!check_oriented()) break;
      if (!check_sourceless()) break;
      if (!check_out_degree(d)) break;
      for (const auto& p : Pattern::forbidden_cycles()) {
        if (auto img = find_subgraph(g, p)) {
          cert.holds = false;
          cert.violation_kind = "pattern";
          cert.violation_pattern = p.name;
          cert.violation_witness = *img;
          break;
        }
      }
      break;
    }
  }
  return cert;
}

}  // namespace qk
