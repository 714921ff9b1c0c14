#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "deltatour/tour.hpp"

namespace deltatour {

inline Tour euler_tour(int n, const std::vector<std::pair<Vertex, Vertex>>& multiedges) {
  auto w = euler_circuit(n, multiedges);
  if (w.empty()) throw Error(ErrorCode::Disconnected, "empty multigraph");
  return vertex_tour(w);
}

struct CycleParams {
  Rational alpha{1}, beta{1}, gamma{0}, kappa{0};
};

struct CycleSubpartition {
  std::vector<std::vector<Vertex>> cycles;
  CycleParams params;

  int covered_vertices() const {
    int c = 0;
    for (const auto& cy : cycles) c += static_cast<int>(cy.size());
    return c;
  }
  Rational weight(int n) const {
    return params.alpha * Rational(static_cast<std::int64_t>(cycles.size())) +
           params.beta * Rational(n - covered_vertices()) + params.gamma * Rational(n) + params.kappa;
  }
};

inline void validate_cycles(const Graph& g, const CycleSubpartition& c) {
  std::vector<char> used(g.n(), 0);
  for (const auto& cy : c.cycles) {
    if (cy.size() < 3) throw Error(ErrorCode::NotDisjointCycles, "cycle shorter than 3");
    for (std::size_t i = 0; i < cy.size(); ++i) {
      Vertex v = cy[i];
      if (v < 0 || v >= g.n() || used[v]) throw Error(ErrorCode::NotDisjointCycles, "vertex reused or invalid");
      used[v] = 1;
      if (!g.adjacent(v, cy[(i + 1) % cy.size()])) throw Error(ErrorCode::NotDisjointCycles, "missing cycle edge");
    }
  }
}

namespace detail {

// Smallest k-subset (in lexicographic order) accepted by pred, over increasing k.
inline std::vector<Vertex> smallest_subset(int n, int cap, const std::function<bool(const std::vector<Vertex>&)>& pred) {
  if (n > cap) throw Error(ErrorCode::TooLarge, "instance exceeds oracle cap of " + std::to_string(cap));
  for (int k = 0; k <= n; ++k) {
    std::vector<Vertex> s(k);
    std::iota(s.begin(), s.end(), 0);
    while (true) {
      if (pred(s)) return s;
      int i = k - 1;
      while (i >= 0 && s[i] == n - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace detail

inline std::vector<Vertex> min_vertex_cover_bf(const Graph& g, int cap = 20) {
  return detail::smallest_subset(g.n(), cap, [&](const std::vector<Vertex>& s) {
    std::vector<char> in(g.n(), 0);
    for (Vertex v : s) in[v] = 1;
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return in[e.u] || in[e.v]; });
  });
}

inline bool dominates(const Graph& g, const std::vector<Vertex>& s) {
  std::vector<char> dom(g.n(), 0);
  for (Vertex v : s) {
    dom[v] = 1;
    for (Vertex y : g.neighbors(v)) dom[y] = 1;
  }
  return std::all_of(dom.begin(), dom.end(), [](char c) { return c != 0; });
}

inline std::vector<Vertex> min_dominating_set_bf(const Graph& g, int cap = 20) {
  return detail::smallest_subset(g.n(), cap, [&](const std::vector<Vertex>& s) { return dominates(g, s); });
}

inline CycleSubpartition min_cycle_subpartition_bf(const Graph& g, const CycleParams& params, int cap = 12) {
  if (g.n() > cap) throw Error(ErrorCode::TooLarge, "instance exceeds oracle cap of " + std::to_string(cap));
  const int m = g.m();
  std::vector<int> deg(g.n(), 0), remaining(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) remaining[v] = g.degree(v);
  std::vector<char> chosen(m, 0);
  std::optional<Rational> best;
  CycleSubpartition best_c;
  best_c.params = params;
  auto extract = [&]() {
    CycleSubpartition c;
    c.params = params;
    std::vector<char> seen(g.n(), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
      if (seen[s] || deg[s] == 0) continue;
      std::vector<Vertex> cy{s};
      seen[s] = 1;
      Vertex prev = -1, cur = s;
      while (true) {
        Vertex nxt = -1;
        auto nb = g.neighbors(cur);
        auto ie = g.incident_edges(cur);
        for (std::size_t i = 0; i < nb.size(); ++i)
          if (chosen[ie[i]] && nb[i] != prev) {
            nxt = nb[i];
            break;
          }
        if (nxt == s || nxt < 0) break;
        if (seen[nxt]) break;
        seen[nxt] = 1;
        cy.push_back(nxt);
        prev = cur;
        cur = nxt;
      }
      c.cycles.push_back(cy);
    }
    return c;
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      CycleSubpartition c = extract();
      Rational w = c.weight(g.n());
      if (!best || w < *best) {
        best = w;
        best_c = c;
      }
      return;
    }
    const Edge& e = g.edge(i);
    --remaining[e.u];
    --remaining[e.v];
    // exclude
    if ((deg[e.u] == 0 || deg[e.u] == 2 || remaining[e.u] > 0) && (deg[e.v] == 0 || deg[e.v] == 2 || remaining[e.v] > 0))
      rec(i + 1);
    // include
    if (deg[e.u] < 2 && deg[e.v] < 2) {
      ++deg[e.u];
      ++deg[e.v];
      chosen[i] = 1;
      if ((deg[e.u] != 1 || remaining[e.u] > 0) && (deg[e.v] != 1 || remaining[e.v] > 0)) rec(i + 1);
      chosen[i] = 0;
      --deg[e.u];
      --deg[e.v];
    }
    ++remaining[e.u];
    ++remaining[e.v];
  };
  rec(0);
  return best_c;
}

// Shortest closed walk through all vertices (Held–Karp over the metric closure).
inline Rational tsp_shortest_bf(const Graph& g, int cap = 16) {
  if (g.n() > cap) throw Error(ErrorCode::TooLarge, "instance exceeds oracle cap of " + std::to_string(cap));
  require_connected(g);
  const int n = g.n();
  if (n == 1) return Rational(0);
  const int full = 1 << n;
  const int inf = 1 << 29;
  std::vector<int> dp(static_cast<std::size_t>(full) * n, inf);
  dp[1 * n + 0] = 0;
  for (int s = 1; s < full; ++s) {
    if (!(s & 1)) continue;
    for (int v = 0; v < n; ++v) {
      int cur = dp[static_cast<std::size_t>(s) * n + v];
      if (cur >= inf) continue;
      for (int w = 0; w < n; ++w) {
        if (s & (1 << w)) continue;
        int& t = dp[static_cast<std::size_t>(s | (1 << w)) * n + w];
        t = std::min(t, cur + g.dist(v, w));
      }
    }
  }
  int best = inf;
  for (int v = 0; v < n; ++v) best = std::min(best, dp[static_cast<std::size_t>(full - 1) * n + v] + g.dist(v, 0));
  return Rational(best);
}

struct SplitPartition {
  std::vector<Vertex> clique;
  std::vector<Vertex> independent;
};

inline SplitPartition split_partition(const Graph& g) {
  std::vector<Vertex> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  int m = 0;
  for (int i = 0; i < g.n(); ++i)
    if (g.degree(order[i]) >= i) m = i + 1;  // 1-based: d_i >= i - 1
  SplitPartition sp;
  sp.clique.assign(order.begin(), order.begin() + m);
  sp.independent.assign(order.begin() + m, order.end());
  std::sort(sp.clique.begin(), sp.clique.end());
  std::sort(sp.independent.begin(), sp.independent.end());
  for (std::size_t i = 0; i < sp.clique.size(); ++i)
    for (std::size_t j = i + 1; j < sp.clique.size(); ++j)
      if (!g.adjacent(sp.clique[i], sp.clique[j])) throw Error(ErrorCode::NotSplit, "graph is not split");
  for (std::size_t i = 0; i < sp.independent.size(); ++i)
    for (std::size_t j = i + 1; j < sp.independent.size(); ++j)
      if (g.adjacent(sp.independent[i], sp.independent[j])) throw Error(ErrorCode::NotSplit, "graph is not split");
  return sp;
}

// Vertices with no stop at distance < 1.
inline std::vector<Vertex> neglected_vertices(const Graph& g, const Tour& t) {
  validate_tour(g, t);
  if (t.size() < 3) throw Error(ErrorCode::TooShort, "need at least 3 stops");
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    bool near = std::any_of(t.stops.begin(), t.stops.end(),
                            [&](const Point& p) { return point_distance(g, p, Point::vertex(v)) < Rational(1); });
    if (!near) out.push_back(v);
  }
  return out;
}

}  // namespace deltatour
