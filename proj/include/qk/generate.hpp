#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qk/detect.hpp"
#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

// splitmix64; tiny, seedable, good enough for test instances.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by threshold rejection.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw Error("next_below needs a positive bound");
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

template <typename T>
void shuffle_in_place(std::vector<T>& v, SplitMix64& rng) {
  for (size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.next_below(i)]);
}

inline Digraph directed_cycle(int n) {
  if (n < 2) throw InfeasibleParamsError("cycle needs n >= 2");
  std::vector<std::pair<int, int>> e;
  e.reserve(n);
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Digraph::build(n, e);
}

// m disjoint 4-cycles; every quasi-kernel must take two vertices per cycle.
inline Digraph disjoint_c4s(int m) {
  if (m < 1) throw InfeasibleParamsError("need at least one cycle");
  std::vector<std::pair<int, int>> e;
  e.reserve(4 * m);
  for (int c = 0; c < m; ++c) {
    int b = 4 * c;
    for (int i = 0; i < 4; ++i) e.push_back({b + i, b + (i + 1) % 4});
  }
  return Digraph::build(4 * m, e);
}

// Vertex i beats i+r (mod q) for each chosen residue r. A valid residue set
// picks exactly one of {r, q-r} per pair, so the result is a tournament.
inline Digraph rotational_tournament(int q, const std::vector<int>& residues) {
  if (q < 3 || q % 2 == 0) throw InfeasibleParamsError("order must be odd and >= 3");
  if (static_cast<int>(residues.size()) != (q - 1) / 2)
    throw BadResidueSetError("need exactly (q-1)/2 residues");
  std::vector<char> seen(q, 0);
  for (int r : residues) {
    if (r < 1 || r > q - 1) throw BadResidueSetError("residue out of range");
    if (seen[r] || seen[q - r]) throw BadResidueSetError("residues must pick one of each +/- pair");
    seen[r] = 1;
  }
  std::vector<std::pair<int, int>> e;
  e.reserve(static_cast<size_t>(q) * (q - 1) / 2);
  for (int i = 0; i < q; ++i)
    for (int r : residues) e.push_back({i, (i + r) % q});
  return Digraph::build(q, e);
}

// Quadratic-residue tournament; needs a prime q with q % 4 == 3.
inline Digraph paley_tournament(int q) {
  if (q < 3) throw InfeasibleParamsError("order must be >= 3");
  if (q % 4 != 3) throw InfeasibleParamsError("order must be 3 mod 4");
  for (int f = 2; static_cast<long long>(f) * f <= q; ++f)
    if (q % f == 0) throw InfeasibleParamsError("order must be prime");
  std::vector<char> sq(q, 0);
  for (int x = 1; x < q; ++x) sq[static_cast<long long>(x) * x % q] = 1;
  std::vector<int> residues;
  for (int r = 1; r < q; ++r)
    if (sq[r]) residues.push_back(r);
  return rotational_tournament(q, residues);
}

// Give every tournament vertex k private sinks. Eligibility: the tournament
// must be regular of odd order with no ordered pair where N+(v) = N-(u);
// that blocks any single vertex from dominating another's whole out-set and
// keeps the per-vertex sink sets pairwise unmergeable.
inline Digraph attach_private_sinks(const Digraph& t, int k) {
  const int q = t.order();
  if (k < 1) throw InfeasibleParamsError("need at least one sink per vertex");
  if (q < 3 || q % 2 == 0) throw IneligibleTournamentError("order must be odd and >= 3");
  const int half = (q - 1) / 2;
  for (int v = 0; v < q; ++v)
    if (t.out_degree(v) != half || t.in_degree(v) != half)
      throw IneligibleTournamentError("tournament must be regular");
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b)
      if (t.has_edge(a, b) == t.has_edge(b, a))
        throw IneligibleTournamentError("not a tournament");
  for (int v = 0; v < q; ++v)
    for (int u = 0; u < q; ++u)
      if (u != v && t.out(v) == t.in(u))
        throw IneligibleTournamentError("some out-set equals another in-set");

  std::vector<std::pair<int, int>> e = t.edges();
  for (int v = 0; v < q; ++v)
    for (int j = 0; j < k; ++j) e.push_back({v, q + v * k + j});
  return Digraph::build(q + q * k, e);
}

// Random sourceless digraph: a permutation cycle guarantees sourcelessness,
// then random extra edges are layered on up to the requested density.
inline Digraph random_sourceless(int n, int d, uint64_t seed, bool oriented) {
  if (n < 2) throw InfeasibleParamsError("need n >= 2");
  if (d < 1) throw InfeasibleParamsError("need d >= 1");
  if (oriented && n == 2) throw InfeasibleParamsError("no oriented sourceless digraph on 2 vertices");
  SplitMix64 rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  shuffle_in_place(perm, rng);

  std::vector<std::set<int>> adj(n);
  for (int i = 0; i < n; ++i) adj[perm[i]].insert(perm[(i + 1) % n]);

  const long long attempts = 2LL * n * (d - 1);
  for (long long a = 0; a < attempts; ++a) {
    int u = static_cast<int>(rng.next_below(n));
    int v = static_cast<int>(rng.next_below(n));
    if (u == v) continue;
    if (static_cast<int>(adj[u].size()) >= d) continue;
    if (oriented && adj[v].count(u)) continue;
    adj[u].insert(v);
  }

  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v : adj[u]) e.push_back({u, v});
  return Digraph::build(n, e);
}

// Random certified member of the bounded-degree no-short-cycles class. The
// underlying undirected graph is kept at girth >= 7; every forbidden
// configuration spans an undirected cycle of length at most 6, so any
// orientation is then safe. Built as a random permutation cycle plus guarded
// random chords. Small orders degenerate: a plain cycle for 4 <= n <= 6
// (out-degrees of 1 admit none of the configurations), nothing below 4.
inline Digraph random_short_cycle_free(int n, int d, uint64_t seed) {
  if (d < 2) throw InfeasibleParamsError("need d >= 2");
  if (n < 4) throw GenerationFailedError("no qualifying digraph this small");
  SplitMix64 rng(seed);

  auto perm_cycle = [&]() {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(perm, rng);
    std::vector<std::pair<int, int>> e;
    e.reserve(n);
    for (int i = 0; i < n; ++i) e.push_back({perm[i], perm[(i + 1) % n]});
    return e;
  };

  if (n < 7) return Digraph::build(n, perm_cycle());

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::pair<int, int>> e = perm_cycle();
    std::vector<std::set<int>> und(n);
    std::vector<int> outdeg(n, 0), deg(n, 0);
    for (auto [u, v] : e) {
      und[u].insert(v);
      und[v].insert(u);
      ++outdeg[u];
      ++deg[u];
      ++deg[v];
    }

    // True iff an undirected path of length <= 5 already joins a and b, in
    // which case the chord ab would close a cycle of length <= 6.
    auto close_by = [&](int a, int b) {
      std::vector<int> dist(n, -1);
      std::vector<int> q{a};
      dist[a] = 0;
      for (size_t h = 0; h < q.size(); ++h) {
        int x = q[h];
        if (dist[x] == 5) continue;
        for (int y : und[x]) {
          if (dist[y] >= 0) continue;
          if (y == b) return true;
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
      }
      return false;
    };

    const long long tries = 4LL * n * d;
    for (long long a = 0; a < tries; ++a) {
      int u = static_cast<int>(rng.next_below(n));
      int v = static_cast<int>(rng.next_below(n));
      if (u == v || und[u].count(v)) continue;
      if (rng.next_below(2)) std::swap(u, v);
      if (outdeg[u] >= d || deg[u] >= 2 * d || deg[v] >= 2 * d) continue;
      if (close_by(u, v)) continue;
      und[u].insert(v);
      und[v].insert(u);
      e.push_back({u, v});
      ++outdeg[u];
      ++deg[u];
      ++deg[v];
    }

    Digraph g = Digraph::build(n, e);
    if (certify(g, DigraphClass::ShortCycleFree, d).holds) return g;
  }
  throw GenerationFailedError("could not generate a certified instance");
}

// Random sourceless digraph with no induced out-star on d leaves, obtained
// by capping out-degrees at d - 1.
inline Digraph random_star_free(int n, int d, uint64_t seed, bool oriented = false) {
  if (d < 2) throw InfeasibleParamsError("need d >= 2");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Digraph g = random_sourceless(n, d - 1, rng.next(), oriented);
    if (!find_induced_star(g, d)) return g;
  }
  throw GenerationFailedError("could not generate a certified instance");
}

// Declarative family description, used by the CLI and the bench driver.
struct GenSpec {
  std::string family;  // cycle | c4s | rotational | paley | paley-sinks |
                       // random | short-cycle-free | star-free
  int n = 0;
  int m = 0;
  int d = 0;
  int k = 0;
  int q = 0;
  uint64_t seed = 0;
  bool oriented = false;
  std::vector<int> residues{};

  Digraph realize() const {
    if (family == "cycle") return directed_cycle(n);
    if (family == "c4s") return disjoint_c4s(m);
    if (family == "rotational") return rotational_tournament(q, residues);
    if (family == "paley") return paley_tournament(q);
    if (family == "paley-sinks") return attach_private_sinks(paley_tournament(q), k);
    if (family == "random") return random_sourceless(n, d, seed, oriented);
    if (family == "short-cycle-free") return random_short_cycle_free(n, d, seed);
    if (family == "star-free") return random_star_free(n, d, seed, oriented);
    throw InfeasibleParamsError("unknown family: " + family);
  }

  std::vector<std::string> header_comments() const {
    std::vector<std::string> c;
    c.push_back("family " + family);
    if (family == "cycle") c.push_back("n " + std::to_string(n));
    if (family == "c4s") c.push_back("m " + std::to_string(m));
    if (family == "rotational" || family == "paley" || family == "paley-sinks")
      c.push_back("q " + std::to_string(q));
    if (family == "paley-sinks") c.push_back("k " + std::to_string(k));
    if (family == "random" || family == "short-cycle-free" || family == "star-free") {
      c.push_back("n " + std::to_string(n));
      c.push_back("d " + std::to_string(d));
      c.push_back("seed " + std::to_string(seed));
    }
    if (family == "random" || family == "star-free")
      c.push_back(std::string("oriented ") + (oriented ? "1" : "0"));
    return c;
  }
};

}  // namespace qk
