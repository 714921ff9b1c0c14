#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "deltatour/graph.hpp"

namespace testsupport {

using deltatour::Graph;
using deltatour::Vertex;

// Small graphs as adjacency bitmasks, n <= 8.
struct Small {
  int n = 0;
  std::vector<std::uint32_t> adj;

  Graph graph() const {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adj[u] >> v & 1) e.emplace_back(u, v);
    return deltatour::build_graph(e, n);
  }
  bool connected() const {
    if (n <= 1) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 0; v < n; ++v)
        if (frontier >> v & 1) next |= adj[v];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == (1u << n) - 1;
  }
};

// Upper-triangle code under a vertex order.
inline std::uint64_t code_of(const Small& g, const std::vector<int>& order) {
  std::uint64_t c = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) c = c << 1 | (g.adj[order[i]] >> order[j] & 1);
  return c;
}

// Canonical code: refine colours by neighbour multisets, then try every order
// that respects the colour classes.
inline std::uint64_t canonical_code(const Small& g) {
  std::vector<int> col(g.n);
  for (int v = 0; v < g.n; ++v) col[v] = __builtin_popcount(g.adj[v]);
  for (int round = 0; round < g.n; ++round) {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> sig(g.n);
    for (int v = 0; v < g.n; ++v) {
      sig[v].push_back(col[v]);
      std::vector<int> nb;
      for (int w = 0; w < g.n; ++w)
        if (g.adj[v] >> w & 1) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
      ids[sig[v]];
    }
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<int> nc(g.n);
    for (int v = 0; v < g.n; ++v) nc[v] = ids[sig[v]];
    bool same = std::set<int>(nc.begin(), nc.end()).size() == std::set<int>(col.begin(), col.end()).size();
    col = nc;
    if (same) break;
  }
  std::vector<int> order(g.n);
  for (int v = 0; v < g.n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return col[a] != col[b] ? col[a] < col[b] : a < b; });
  // class boundaries
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < g.n;) {
    int j = i;
    while (j < g.n && col[order[j]] == col[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = ~0ull;
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      best = std::min(best, code_of(g, order));
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do rec(b + 1);
    while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

// All graphs on exactly n vertices up to isomorphism.
inline std::vector<Small> all_graphs(int n) {
  std::vector<Small> level{Small{0, {}}};
  for (int k = 1; k <= n; ++k) {
    std::map<std::uint64_t, Small> next;
    for (const auto& g : level)
      for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        Small h{k, g.adj};
        h.adj.push_back(mask);
        for (int v = 0; v < k - 1; ++v)
          if (mask >> v & 1) h.adj[v] |= 1u << (k - 1);
        next.emplace(canonical_code(h), h);
      }
    level.clear();
    for (auto& [c, g] : next) level.push_back(g);
  }
  return level;
}

inline std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (const auto& g : all_graphs(n))
    if (g.connected()) out.push_back(g.graph());
  return out;
}

inline std::vector<Graph> connected_graphs_up_to(int nmax, int nmin = 1) {
  std::vector<Graph> out;
  for (int n = nmin; n <= nmax; ++n) {
    auto v = connected_graphs(n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Random connected graph: random tree plus `extra` further edges.
inline Graph random_connected(std::mt19937& rng, int n, int extra) {
  std::vector<std::pair<Vertex, Vertex>> e;
  std::set<std::pair<Vertex, Vertex>> have;
  for (int v = 1; v < n; ++v) {
    Vertex p = std::uniform_int_distribution<int>(0, v - 1)(rng);
    e.emplace_back(p, v);
    have.insert({p, v});
  }
  int maxm = n * (n - 1) / 2;
  int target = std::min(maxm, n - 1 + extra);
  while (static_cast<int>(e.size()) < target) {
    Vertex a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    Vertex b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (have.insert({a, b}).second) e.emplace_back(a, b);
  }
  return deltatour::build_graph(e, n);
}

inline Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return deltatour::build_graph(e, n);
}

inline Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return deltatour::build_graph(e, n);
}

inline Graph cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int a = 0; a < n; ++a) e.emplace_back(a, (a + 1) % n);
  return deltatour::build_graph(e, n);
}

inline Graph star(int leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int a = 1; a <= leaves; ++a) e.emplace_back(0, a);
  return deltatour::build_graph(e, leaves + 1);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int x = 0; x < a; ++x)
    for (int y = 0; y < b; ++y) e.emplace_back(x, a + y);
  return deltatour::build_graph(e, a + b);
}

inline Graph cube3() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 0; v < 8; ++v)
    for (int bit = 1; bit < 8; bit <<= 1)
      if (v < (v ^ bit)) e.emplace_back(v, v ^ bit);
  return deltatour::build_graph(e, 8);
}

// Split graph: clique 0..c-1, independent c..c+i-1 with random nonempty
// neighbourhoods in the clique.
inline Graph random_split(std::mt19937& rng, int c, int i) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int a = 0; a < c; ++a)
    for (int b = a + 1; b < c; ++b) e.emplace_back(a, b);
  for (int x = 0; x < i; ++x) {
    std::uint32_t mask = 0;
    while (!mask) mask = std::uniform_int_distribution<std::uint32_t>(0, (1u << c) - 1)(rng);
    for (int a = 0; a < c; ++a)
      if (mask >> a & 1) e.emplace_back(a, c + x);
  }
  return deltatour::build_graph(e, c + i);
}

}  // namespace testsupport
