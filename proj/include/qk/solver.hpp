#pragma once

#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/oracle.hpp"
#include "qk/rational.hpp"

namespace qk {

inline void require_sourceless(const Digraph& g) {
  if (auto s = find_source(g)) throw NotSourcelessError(*s);
}

// Threshold parameterizations tied to the supported digraph classes.
inline Rational out_degree3_threshold() { return Rational(4, 3); }

inline Rational star_free_threshold(int d) {
  if (d < 2) throw Error("star-free threshold needs d >= 2");
  return Rational(static_cast<long long>(d) * d - 2 * d + 2, d - 1);
}

inline Rational short_cycle_threshold(int d) {
  if (d < 2) throw Error("short-cycle threshold needs d >= 2");
  return Rational(static_cast<long long>(d) * d + 4, 4LL * d);
}

enum class WitnessCase { NotInS, InS };

struct WitnessCheck {
  bool holds = false;
  WitnessCase which = WitnessCase::NotInS;
  long long union_size = 0;  // |N+(v) u N+(S(v))|
  long long s_size = 0;      // |S(v)|
  long long required = 0;    // s_size + 1, relaxed to s_size when v in N+(S(v))
};

namespace detail {

inline WitnessCheck witness_condition_unchecked(const Digraph& g, int v,
                                                const Rational& t) {
  g.require_vertex(v);
  WitnessCheck wc;
  VertexSet s = s_of(g, v);
  wc.s_size = static_cast<long long>(s.size());
  std::vector<char> u(g.order(), 0);
  for (int x : g.out(v)) u[x] = 1;
  bool in_s = false;
  for (int x : s)
    for (int y : g.out(x)) {
      u[y] = 1;
      if (y == v) in_s = true;
    }
  long long us = 0;
  for (char c : u) us += c;
  wc.union_size = us;
  wc.which = in_s ? WitnessCase::InS : WitnessCase::NotInS;
  wc.required = wc.s_size + (in_s ? 0 : 1);
  wc.holds = t.times_count_at_least(wc.union_size, wc.required);
  return wc;
}

}  // namespace detail

// t * |N+(v) u N+(S(v))| >= |S(v)| + 1, relaxed by one when v in N+(S(v)).
inline WitnessCheck witness_condition(const Digraph& g, int v, const Rational& t) {
  require_sourceless(g);
  return detail::witness_condition_unchecked(g, v, t);
}

// Lowest-id vertex satisfying the condition, scanning everything.
inline std::optional<int> find_witness_tratio(const Digraph& g, const Rational& t) {
  require_sourceless(g);
  for (int v = 0; v < g.order(); ++v)
    if (detail::witness_condition_unchecked(g, v, t).holds) return v;
  return std::nullopt;
}

// Number of out-neighbors of v that are sinks with in-degree exactly 1.
inline long long climb_potential(const Digraph& g, int v) {
  long long k = 0;
  for (int u : g.out(v))
    if (g.out_degree(u) == 0 && g.in_degree(u) == 1) ++k;
  return k;
}

struct ClimbTrace {
  std::vector<int> visited;
  bool stalled = false;
  bool rescued_by_scan = false;
};

// Local search for the bounded-degree no-short-cycles class: hop to the
// out-neighbor with strictly larger climb potential until the condition
// holds. The potential strictly increases, so at most d hops happen on
// certified inputs. On other inputs the climb may stall; the full scan then
// serves as a rescue, and absence is reported honestly.
inline std::optional<int> find_witness_kclimb(const Digraph& g, int d,
                                              ClimbTrace* trace = nullptr) {
  if (d < 2) throw Error("climb needs d >= 2");
  require_sourceless(g);
  const Rational t = short_cycle_threshold(d);
  int active = -1;
  for (int v = 0; v < g.order(); ++v)
    if (g.out_degree(v) >= 1) {
      active = v;
      break;
    }
  if (active < 0) return std::nullopt;

  std::vector<int> visited;
  while (true) {
    visited.push_back(active);
    if (detail::witness_condition_unchecked(g, active, t).holds) {
      if (trace) trace->visited = visited;
      return active;
    }
    long long best = climb_potential(g, active);
    int next = -1;
    for (int w : g.out(active)) {
      long long kw = climb_potential(g, w);
      if (kw > best) {
        best = kw;
        next = w;
      }
    }
    if (next < 0) break;
    active = next;
  }
  if (trace) {
    trace->visited = visited;
    trace->stalled = true;
  }
  auto rescue = find_witness_tratio(g, t);
  if (trace) trace->rescued_by_scan = rescue.has_value();
  return rescue;
}

struct Strategy {
  enum class Kind { Baseline, TRatio, OutDeg3, ShortCycleFree };
  Kind kind = Kind::TRatio;
  Rational t{1, 1};
  int d = 0;                       // ShortCycleFree degree cap
  std::optional<int> exact_tail;   // exact search replaces recursion at this order

  static Strategy baseline() { return {Kind::Baseline, Rational(0), 0, std::nullopt}; }
  static Strategy tratio(const Rational& t_) {
    if (t_ < Rational(1)) throw Error("threshold must be at least 1");
    return {Kind::TRatio, t_, 0, std::nullopt};
  }
  static Strategy outdeg3() {
    return {Kind::OutDeg3, out_degree3_threshold(), 3, std::nullopt};
  }
  static Strategy short_cycle_free(int d_) {
    return {Kind::ShortCycleFree, short_cycle_threshold(d_), d_, std::nullopt};
  }
  Strategy with_exact_tail(int cap = 16) const {
    if (cap < 1 || cap > 24) throw Error("exact tail cap must be in [1, 24]");
    Strategy s = *this;
    s.exact_tail = cap;
    return s;
  }

  const char* kind_name() const {
    switch (kind) {
      case Kind::Baseline: return "baseline";
      case Kind::TRatio: return "tratio";
      case Kind::OutDeg3: return "outdeg3";
      case Kind::ShortCycleFree: return "short-cycle-free";
    }
    return "?";
  }
};

struct PhaseTrace {
  int witness = -1;           // id in the graph the phase ran on; solve() remaps
  long long graph_order = 0;  // to original instance ids before reporting
  long long s_size = 0;
  bool in_s = false;  // witness in N+(S(witness))
  bool condition_held = false;
  bool used_fallback = false;
  long long union_size = 0;
  long long vertices_removed = 0;
  long long k_additions = 0;
  long long loop_iterations = 0;
  bool v_added_at_reconstruction = false;
  long long climb_visited = 0;  // 0 when the strategy does not climb
  bool climb_stalled = false;
};

struct PhaseOutcome {
  VertexSet k_phase;   // ids of the input graph
  InducedSubgraph h;   // sourceless residual + id maps relative to the input graph
  PhaseTrace trace;
};

// One contraction step: seed K with S(v), delete N+[v] u N+[S(v)], then
// repeatedly drop isolated vertices and, while a source remains, absorb the
// lowest-id source's closed out-neighborhood into the deletion, adding the
// source to K. Ends with a sourceless residual. The final re-add test for v
// belongs to the driver, not here.
inline PhaseOutcome phase(const Digraph& g, int v) {
  require_sourceless(g);
  g.require_vertex(v);
  const int n = g.order();

  PhaseTrace tr;
  tr.witness = v;
  tr.graph_order = n;

  VertexSet s = s_of(g, v);
  tr.s_size = static_cast<long long>(s.size());

  std::vector<char> dead(n, 0);
  dead[v] = 1;
  for (int u : g.out(v)) dead[u] = 1;
  bool in_s = false;
  for (int x : s) {
    dead[x] = 1;
    for (int u : g.out(x)) {
      if (u == v) in_s = true;
      dead[u] = 1;
    }
  }
  tr.in_s = in_s;

  VertexSet k = s;

  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (int a = 0; a < n; ++a) {
    if (dead[a]) continue;
    for (int b : g.out(a))
      if (!dead[b]) {
        ++outdeg[a];
        ++indeg[b];
      }
  }
  std::set<int> srcs;  // alive residual sources, ordered by id
  for (int a = 0; a < n; ++a)
    if (!dead[a] && indeg[a] == 0) srcs.insert(a);

  auto remove_vertex = [&](int x) {
    dead[x] = 1;
    srcs.erase(x);
    for (int b : g.out(x))
      if (!dead[b] && --indeg[b] == 0) srcs.insert(b);
    for (int a : g.in(x))
      if (!dead[a]) --outdeg[a];
  };

  while (!srcs.empty()) {
    ++tr.loop_iterations;
    // Isolated vertices have no alive neighbors, so dropping them needs no
    // degree updates.
    for (auto it = srcs.begin(); it != srcs.end();) {
      if (outdeg[*it] == 0) {
        dead[*it] = 1;
        it = srcs.erase(it);
      } else {
        ++it;
      }
    }
    if (srcs.empty()) break;
    int x = *srcs.begin();
    k.push_back(x);
    const std::vector<int> nb = g.out(x);
    remove_vertex(x);
    for (int b : nb)
      if (!dead[b]) remove_vertex(b);
  }

  std::sort(k.begin(), k.end());
  VertexSet removed;
  for (int a = 0; a < n; ++a)
    if (dead[a]) removed.push_back(a);
  tr.vertices_removed = static_cast<long long>(removed.size());
  tr.k_additions = static_cast<long long>(k.size());

  return PhaseOutcome{std::move(k), induced_delete(g, removed), std::move(tr)};
}

struct SolveResult {
  VertexSet q;                     // original instance ids
  std::vector<PhaseTrace> phases;  // witness ids remapped to original ids
  bool bound_guaranteed = false;
  Strategy strategy;
  std::string tail_method;  // baseline | recursed-to-empty | exact-oracle
  long long fallback_phases = 0;
};

enum class PickPolicy { LowestId };

// Classic existence recursion, usable on digraphs with sources: recurse on
// D - N+[v] for the picked vertex, then keep v out exactly when the inner
// result already dominates it.
inline VertexSet chvatal_lovasz(const Digraph& g, PickPolicy = PickPolicy::LowestId) {
  struct Frame {
    int v;
    std::vector<int> to_parent;
    std::vector<int> v_in;  // in-neighbors of v in the frame's graph
  };
  std::vector<Frame> stack;
  Digraph cur = g;
  while (cur.order() > 0) {
    int v = 0;
    auto sub = induced_delete(cur, set_union_of(VertexSet{v}, cur.out(v)));
    stack.push_back({v, std::move(sub.to_parent), cur.in(v)});
    cur = std::move(sub.graph);
  }
  VertexSet k;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    VertexSet up;
    up.reserve(k.size() + 1);
    for (int x : k) up.push_back(it->to_parent[x]);
    std::sort(up.begin(), up.end());
    bool dominated = false;
    for (int w : it->v_in)
      if (set_contains(up, w)) {
        dominated = true;
        break;
      }
    if (!dominated) {
      up.push_back(it->v);
      std::sort(up.begin(), up.end());
    }
    k = std::move(up);
  }
  if (!is_quasi_kernel(g, k)) throw Error("internal: baseline set failed verification");
  return k;
}

// Phase-driven construction. Each phase picks a witness (scan or climb,
// depending on strategy), contracts, and recurses on the residual; when no
// witness exists the vertex closest to the threshold is used instead and the
// guarantee flag drops. Reconstruction walks the phases in reverse, re-adding
// each phase's witness unless the set built so far already dominates it.
inline SolveResult solve(const Digraph& g, const Strategy& strategy) {
  require_sourceless(g);
  SolveResult res;
  res.strategy = strategy;

  if (strategy.kind == Strategy::Kind::Baseline) {
    res.q = chvatal_lovasz(g);
    res.tail_method = "baseline";
    res.bound_guaranteed = false;
    return res;
  }

  struct Frame {
    int v;
    VertexSet k_phase;
    std::vector<int> to_parent;
    VertexSet v_in;  // in-neighbors of v in the frame's graph
    PhaseTrace trace;
  };
  std::vector<Frame> stack;

  Digraph cur = g;
  std::vector<int> to_orig(g.order());
  std::iota(to_orig.begin(), to_orig.end(), 0);

  VertexSet r_inner;
  bool tail_ok = true;
  res.tail_method = "recursed-to-empty";

  while (cur.order() > 0) {
    if (strategy.exact_tail && cur.order() <= *strategy.exact_tail) {
      r_inner = smallest_quasi_kernel(cur);
      res.tail_method = "exact-oracle";
      // The guarantee stays honest only if the tail's optimum fits the bound
      // on its own subgraph.
      tail_ok = (strategy.t.num + strategy.t.den) *
                    static_cast<long long>(r_inner.size()) <=
                strategy.t.num * static_cast<long long>(cur.order());
      break;
    }

    std::optional<int> w;
    ClimbTrace climb;
    bool climbed = false;
    if (strategy.kind == Strategy::Kind::ShortCycleFree) {
      w = find_witness_kclimb(cur, strategy.d, &climb);
      climbed = true;
    } else {
      w = find_witness_tratio(cur, strategy.t);
    }

    bool fallback = false;
    if (!w) {
      // Keep the procedure total: take the vertex minimizing
      // (|S(v)|+1) - t*|N+(v) u N+(S(v))|, lowest id on ties.
      long long best_def = std::numeric_limits<long long>::max();
      int best = -1;
      for (int v = 0; v < cur.order(); ++v) {
        auto wc = detail::witness_condition_unchecked(cur, v, strategy.t);
        long long def = (wc.s_size + 1) * strategy.t.den - strategy.t.num * wc.union_size;
        if (def < best_def) {
          best_def = def;
          best = v;
        }
      }
      w = best;
      fallback = true;
      ++res.fallback_phases;
    }

    auto wc = detail::witness_condition_unchecked(cur, *w, strategy.t);
    PhaseOutcome po = phase(cur, *w);
    po.trace.condition_held = wc.holds;
    po.trace.used_fallback = fallback;
    po.trace.union_size = wc.union_size;
    if (climbed) {
      po.trace.climb_visited = static_cast<long long>(climb.visited.size());
      po.trace.climb_stalled = climb.stalled;
    }
    po.trace.witness = to_orig[*w];

    Frame f{*w, std::move(po.k_phase), std::move(po.h.to_parent), cur.in(*w),
            std::move(po.trace)};
    std::vector<int> next_to_orig(f.to_parent.size());
    for (size_t i = 0; i < f.to_parent.size(); ++i)
      next_to_orig[i] = to_orig[f.to_parent[i]];
    cur = std::move(po.h.graph);
    to_orig = std::move(next_to_orig);
    stack.push_back(std::move(f));
  }

  VertexSet r = std::move(r_inner);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    Frame& f = *it;
    VertexSet kr = f.k_phase;
    for (int x : r) kr.push_back(f.to_parent[x]);
    std::sort(kr.begin(), kr.end());
    bool dominated = false;
    for (int w : f.v_in)
      if (set_contains(kr, w)) {
        dominated = true;
        break;
      }
    if (!dominated) {
      kr.push_back(f.v);
      std::sort(kr.begin(), kr.end());
      f.trace.v_added_at_reconstruction = true;
    }
    r = std::move(kr);
  }

  res.q = std::move(r);
  res.phases.reserve(stack.size());
  bool all_held = tail_ok;
  for (auto& f : stack) {
    all_held = all_held && f.trace.condition_held;
    res.phases.push_back(std::move(f.trace));
  }
  res.bound_guaranteed = all_held;

  if (!is_quasi_kernel(g, res.q))
    throw Error("internal: produced set failed verification");
  return res;
}

struct ScanRow {
  int v = -1;
  int out_degree = 0;
  long long s_size = 0;
  long long union_size = 0;
  bool in_s = false;
  bool holds = false;
};

// Per-vertex condition sweep, summarizing whether any witness exists at all
// (and among positive out-degree vertices specifically).
struct ScanReport {
  Rational t;
  long long witness_count = 0;
  long long witness_count_posdeg = 0;
  bool profile_holds = false;         // no vertex satisfies the condition
  bool profile_holds_posdeg = false;  // none with out-degree >= 1 does
  std::vector<ScanRow> rows;
};

inline ScanReport counterexample_scan(const Digraph& g, const Rational& t) {
  require_sourceless(g);
  ScanReport rep;
  rep.t = t;
  rep.rows.reserve(g.order());
  for (int v = 0; v < g.order(); ++v) {
    auto wc = detail::witness_condition_unchecked(g, v, t);
    rep.rows.push_back({v, g.out_degree(v), wc.s_size, wc.union_size,
                        wc.which == WitnessCase::InS, wc.holds});
    if (wc.holds) {
      ++rep.witness_count;
      if (g.out_degree(v) >= 1) ++rep.witness_count_posdeg;
    }
  }
  rep.profile_holds = rep.witness_count == 0;
  rep.profile_holds_posdeg = rep.witness_count_posdeg == 0;
  return rep;
}

}  // namespace qk
