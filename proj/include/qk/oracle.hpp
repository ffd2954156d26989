#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

// Caps for the exact searches; exceeding any of them throws instead of spinning.
struct OracleBudget {
  int max_n = 24;
  long long max_subsets = 50'000'000;
  std::chrono::milliseconds time_limit{120'000};
};

namespace detail {

// Minimum-size independent set whose per-vertex cover masks union to all of V,
// lexicographically smallest among the minimums. Vertices are tried ascending
// with iterative deepening on the size, so the first hit is the answer.
inline std::optional<VertexSet> smallest_cover(const Digraph& g,
                                               const std::vector<uint64_t>& cover,
                                               const OracleBudget& budget) {
  const int n = g.order();
  const uint64_t full = n == 64 ? ~0ull : ((1ull << n) - 1);
  std::vector<uint64_t> conflict(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.out(v)) {
      conflict[v] |= 1ull << u;
      conflict[u] |= 1ull << v;
    }
  int max_cover = 1;
  for (int v = 0; v < n; ++v)
    max_cover = std::max(max_cover, std::popcount(cover[v]));

  long long nodes = 0;
  auto deadline = std::chrono::steady_clock::now() + budget.time_limit;
  std::vector<int> chosen;

  auto dfs = [&](auto&& self, int start, int slots, uint64_t covered,
                 uint64_t blocked) -> bool {
    if (++nodes > budget.max_subsets)
      throw BudgetExceededError("exact search exceeded subset budget");
    if ((nodes & 8191) == 0 && std::chrono::steady_clock::now() > deadline)
      throw BudgetExceededError("exact search exceeded time budget");
    if (slots == 0) return covered == full;
    long long uncovered = std::popcount(full & ~covered);
    if (uncovered > static_cast<long long>(slots) * max_cover) return false;
    if (n - start < slots) return false;
    for (int v = start; v < n; ++v) {
      if (blocked & (1ull << v)) continue;
      // A member of a minimum solution always covers something its
      // predecessors do not; skipping the rest is safe at the minimum size.
      if ((cover[v] & ~covered) == 0) continue;
      chosen.push_back(v);
      if (self(self, v + 1, slots - 1, covered | cover[v],
               blocked | conflict[v] | (1ull << v)))
        return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int k = 1; k <= n; ++k) {
    chosen.clear();
    if (dfs(dfs, 0, k, 0, 0)) return VertexSet(chosen.begin(), chosen.end());
  }
  return std::nullopt;
}

inline void check_budget(const Digraph& g, const OracleBudget& budget) {
  if (g.order() == 0) throw Error("exact search needs a nonempty digraph");
  if (g.order() > budget.max_n || g.order() > 64)
    throw BudgetExceededError("order " + std::to_string(g.order()) +
                              " exceeds exact-search budget of " +
                              std::to_string(std::min(budget.max_n, 64)));
}

}  // namespace detail

// Smallest quasi-kernel, lexicographically smallest among minimums. One always
// exists, so a fruitless search indicates an internal defect.
inline VertexSet smallest_quasi_kernel(const Digraph& g,
                                       const OracleBudget& budget = {}) {
  detail::check_budget(g, budget);
  const int n = g.order();
  std::vector<uint64_t> ball(n, 0);
  for (int v = 0; v < n; ++v) {
    ball[v] |= 1ull << v;
    for (int u : g.out(v)) {
      ball[v] |= 1ull << u;
      for (int w : g.out(u)) ball[v] |= 1ull << w;
    }
  }
  auto r = detail::smallest_cover(g, ball, budget);
  if (!r) throw Error("internal: no quasi-kernel found by exact search");
  return *r;
}

// Smallest kernel, or absent when the digraph has none.
inline std::optional<VertexSet> smallest_kernel(const Digraph& g,
                                                const OracleBudget& budget = {}) {
  detail::check_budget(g, budget);
  const int n = g.order();
  std::vector<uint64_t> reach(n, 0);
  for (int v = 0; v < n; ++v) {
    reach[v] |= 1ull << v;
    for (int u : g.out(v)) reach[v] |= 1ull << u;
  }
  return detail::smallest_cover(g, reach, budget);
}

inline long long quasi_kernel_number(const Digraph& g,
                                     const OracleBudget& budget = {}) {
  return static_cast<long long>(smallest_quasi_kernel(g, budget).size());
}

}  // namespace qk
