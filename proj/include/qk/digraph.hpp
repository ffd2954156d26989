#pragma once

#include <algorithm>
#include <iterator>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "qk/errors.hpp"

namespace qk {

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<int>;

inline bool set_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

[[nodiscard]] inline VertexSet set_normalize(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline VertexSet set_union_of(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Directed distance in hops. Unreachable compares above every finite value.
class Distance {
 public:
  static Distance finite(int hops) {
    if (hops < 0) throw Error("negative distance");
    return Distance(hops);
  }
  static Distance infinite() { return Distance(-1); }

  bool is_infinite() const { return raw_ < 0; }
  int hops() const {
    if (is_infinite()) throw Error("infinite distance has no hop count");
    return raw_;
  }

  friend bool operator==(Distance, Distance) = default;
  friend std::strong_ordering operator<=>(Distance a, Distance b) {
    return a.key() <=> b.key();
  }

 private:
  explicit Distance(int raw) : raw_(raw) {}
  long long key() const {
    return is_infinite() ? std::numeric_limits<long long>::max() : raw_;
  }
  int raw_;
};

// Immutable simple digraph. Digons (u->v plus v->u) are allowed; loops and
// parallel edges are not. Adjacency lists stay sorted ascending so iteration
// order, and every tie-break built on it, is deterministic.
class Digraph {
 public:
  Digraph() = default;

  static Digraph build(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw Error("negative vertex count");
    Digraph g;
    g.n_ = n;
    g.out_.assign(n, {});
    g.in_.assign(n, {});
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n) throw VertexOutOfRangeError(u, n);
      if (v < 0 || v >= n) throw VertexOutOfRangeError(v, n);
      if (u == v) throw LoopEdgeError(u);
      g.out_[u].push_back(v);
    }
    long long m = 0;
    for (int v = 0; v < n; ++v) {
      auto& a = g.out_[v];
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      m += static_cast<long long>(a.size());
      for (int u : a) g.in_[u].push_back(v);
    }
    for (int v = 0; v < n; ++v) std::sort(g.in_[v].begin(), g.in_[v].end());
    g.m_ = m;
    return g;
  }

  int order() const { return n_; }
  long long edge_count() const { return m_; }

  const std::vector<int>& out(int v) const {
    require_vertex(v);
    return out_[v];
  }
  const std::vector<int>& in(int v) const {
    require_vertex(v);
    return in_[v];
  }
  int out_degree(int v) const { return static_cast<int>(out(v).size()); }
  int in_degree(int v) const { return static_cast<int>(in(v).size()); }

  int max_out_degree() const {
    int d = 0;
    for (const auto& a : out_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  bool has_edge(int u, int v) const {
    require_vertex(u);
    require_vertex(v);
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  // Lexicographically sorted edge list; two equal digraphs produce identical lists.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<size_t>(m_));
    for (int v = 0; v < n_; ++v)
      for (int u : out_[v]) e.emplace_back(v, u);
    return e;
  }

  void require_vertex(int v) const {
    if (v < 0 || v >= n_) throw VertexOutOfRangeError(v, n_);
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  int n_ = 0;
  long long m_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

namespace detail {

// Characteristic vector of N+[X].
inline std::vector<char> closed_out_mask(const Digraph& g, const VertexSet& x) {
  std::vector<char> m(g.order(), 0);
  for (int v : x) {
    g.require_vertex(v);
    m[v] = 1;
    for (int u : g.out(v)) m[u] = 1;
  }
  return m;
}

inline VertexSet mask_to_set(const std::vector<char>& m) {
  VertexSet s;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (m[v]) s.push_back(v);
  return s;
}

}  // namespace detail

inline VertexSet sources(const Digraph& g) {
  VertexSet s;
  for (int v = 0; v < g.order(); ++v)
    if (g.in_degree(v) == 0) s.push_back(v);
  return s;
}

inline VertexSet sinks(const Digraph& g) {
  VertexSet s;
  for (int v = 0; v < g.order(); ++v)
    if (g.out_degree(v) == 0) s.push_back(v);
  return s;
}

inline std::optional<int> find_source(const Digraph& g) {
  for (int v = 0; v < g.order(); ++v)
    if (g.in_degree(v) == 0) return v;
  return std::nullopt;
}

inline bool is_sourceless(const Digraph& g) { return !find_source(g).has_value(); }

inline VertexSet closed_out_neighborhood(const Digraph& g, const VertexSet& x) {
  return detail::mask_to_set(detail::closed_out_mask(g, x));
}

// Sources of the subgraph induced on V \ N+[X]: vertices outside N+[X] whose
// in-neighbors all lie inside N+[X].
inline VertexSet s_of(const Digraph& g, const VertexSet& x) {
  auto removed = detail::closed_out_mask(g, x);
  VertexSet res;
  for (int v = 0; v < g.order(); ++v) {
    if (removed[v]) continue;
    bool src = true;
    for (int w : g.in(v))
      if (!removed[w]) {
        src = false;
        break;
      }
    if (src) res.push_back(v);
  }
  return res;
}

inline VertexSet s_of(const Digraph& g, int v) { return s_of(g, VertexSet{v}); }

// Isolated vertices of the subgraph induced on V \ N+[X]; always a subset of s_of.
inline VertexSet t_of(const Digraph& g, const VertexSet& x) {
  auto removed = detail::closed_out_mask(g, x);
  VertexSet res;
  for (int v = 0; v < g.order(); ++v) {
    if (removed[v]) continue;
    bool isolated = true;
    for (int w : g.in(v))
      if (!removed[w]) {
        isolated = false;
        break;
      }
    if (isolated)
      for (int w : g.out(v))
        if (!removed[w]) {
          isolated = false;
          break;
        }
    if (isolated) res.push_back(v);
  }
  return res;
}

inline VertexSet t_of(const Digraph& g, int v) { return t_of(g, VertexSet{v}); }

inline Distance dist(const Digraph& g, int v, int u) {
  g.require_vertex(v);
  g.require_vertex(u);
  if (v == u) return Distance::finite(0);
  std::vector<int> depth(g.order(), -1);
  depth[v] = 0;
  std::queue<int> q;
  q.push(v);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int w : g.out(x)) {
      if (depth[w] >= 0) continue;
      depth[w] = depth[x] + 1;
      if (w == u) return Distance::finite(depth[w]);
      q.push(w);
    }
  }
  return Distance::infinite();
}

// {v} with everything reachable in at most two hops.
inline VertexSet ball2(const Digraph& g, int v) {
  g.require_vertex(v);
  std::vector<char> m(g.order(), 0);
  m[v] = 1;
  for (int u : g.out(v)) {
    m[u] = 1;
    for (int w : g.out(u)) m[w] = 1;
  }
  return detail::mask_to_set(m);
}

inline bool is_independent(const Digraph& g, const VertexSet& q) {
  auto s = set_normalize(q);
  std::vector<char> in_q(g.order(), 0);
  for (int v : s) {
    g.require_vertex(v);
    in_q[v] = 1;
  }
  for (int v : s)
    for (int u : g.out(v))
      if (in_q[u]) return false;
  return true;
}

// Independent set whose two-hop out-balls cover every vertex.
inline bool is_quasi_kernel(const Digraph& g, const VertexSet& q) {
  auto s = set_normalize(q);
  if (!is_independent(g, s)) return false;
  std::vector<char> cov(g.order(), 0);
  for (int v : s) {
    cov[v] = 1;
    for (int u : g.out(v)) {
      cov[u] = 1;
      for (int w : g.out(u)) cov[w] = 1;
    }
  }
  for (char c : cov)
    if (!c) return false;
  return true;
}

// Independent set such that every outside vertex has an in-neighbor inside.
inline bool is_kernel(const Digraph& g, const VertexSet& k) {
  auto s = set_normalize(k);
  if (!is_independent(g, s)) return false;
  std::vector<char> in_k(g.order(), 0);
  for (int v : s) {
    g.require_vertex(v);
    in_k[v] = 1;
  }
  for (int v = 0; v < g.order(); ++v) {
    if (in_k[v]) continue;
    bool hit = false;
    for (int w : g.in(v))
      if (in_k[w]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

struct InducedSubgraph {
  Digraph graph;
  std::vector<int> to_parent;    // new id -> parent id, ascending
  std::vector<int> from_parent;  // parent id -> new id, -1 when deleted
};

// Subgraph induced on V \ X, with survivors relabeled in ascending id order.
inline InducedSubgraph induced_delete(const Digraph& g, const VertexSet& x) {
  std::vector<char> del(g.order(), 0);
  for (int v : x) {
    g.require_vertex(v);
    del[v] = 1;
  }
  InducedSubgraph res;
  res.from_parent.assign(g.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    if (del[v]) continue;
    res.from_parent[v] = static_cast<int>(res.to_parent.size());
    res.to_parent.push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  for (int v : res.to_parent)
    for (int u : g.out(v))
      if (!del[u]) edges.emplace_back(res.from_parent[v], res.from_parent[u]);
  res.graph = Digraph::build(static_cast<int>(res.to_parent.size()), edges);
  return res;
}

}  // namespace qk
