#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deltatour/point.hpp"

namespace deltatour {

// Closed sequence of stops, stored without the repeated closing point.
struct Tour {
  std::vector<Point> stops;
  friend bool operator==(const Tour&, const Tour&) = default;
  std::size_t size() const { return stops.size(); }
  const Point& at(std::size_t i) const { return stops[i % stops.size()]; }
};

inline Tour vertex_tour(const std::vector<Vertex>& walk) {
  Tour t;
  for (Vertex v : walk) t.stops.push_back(Point::vertex(v));
  return t;
}

inline void validate_tour(const Graph& g, const Tour& t) {
  if (t.stops.empty()) throw Error(ErrorCode::InvalidTour, "empty tour");
  for (const auto& p : t.stops) validate_point(g, p);
  if (t.size() == 1) return;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.at(i);
    const auto& q = t.at(i + 1);
    if (p == q) throw Error(ErrorCode::InvalidTour, "consecutive equal stops " + p.str());
    if (common_edge(g, p, q) < 0)
      throw Error(ErrorCode::InvalidTour, "stops " + p.str() + " and " + q.str() + " share no edge");
  }
}

// Segment between consecutive stops i and i+1: edge plus positions from edge.u.
struct Segment {
  EdgeId e;
  Rational a;
  Rational b;
};

inline std::vector<Segment> tour_segments(const Graph& g, const Tour& t) {
  std::vector<Segment> out;
  if (t.size() < 2) return out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.at(i);
    const auto& q = t.at(i + 1);
    EdgeId e = common_edge(g, p, q);
    out.push_back({e, *position_on(p, g.edge(e)), *position_on(q, g.edge(e))});
  }
  return out;
}

inline Rational tour_length(const Graph& g, const Tour& t) {
  Rational len(0);
  for (const auto& s : tour_segments(g, t)) len += (s.a - s.b).abs();
  return len;
}

inline int discrete_length(const Tour& t) { return t.size() < 2 ? 0 : static_cast<int>(t.size()); }

// Number of times each edge appears as a vertex-to-vertex segment.
inline std::vector<int> traversal_counts(const Graph& g, const Tour& t) {
  std::vector<int> cnt(g.m(), 0);
  if (t.size() < 2) return cnt;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.at(i).is_vertex() && t.at(i + 1).is_vertex()) ++cnt[g.edge_id(t.at(i).u, t.at(i + 1).u)];
  return cnt;
}

inline bool is_nice(const Graph& g, const Tour& t) {
  if (discrete_length(t) < 3) throw Error(ErrorCode::TooShort, "nice tours need at least 3 segments");
  auto trav = traversal_counts(g, t);
  std::vector<int> interior(g.m(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.at(i);
    if (p.is_vertex()) continue;
    const auto& prev = t.at(i + t.size() - 1);
    const auto& next = t.at(i + 1);
    if (prev.is_interior() || next.is_interior()) return false;
    if (prev != next) return false;
    EdgeId e = g.edge_id(p.u, p.v);
    if (++interior[e] > 1) return false;
    if (trav[e] > 0) return false;
  }
  for (int c : trav)
    if (c > 2) return false;
  return true;
}

inline Tour merge_repeats(std::vector<Point> s) {
  std::vector<Point> out;
  for (auto& p : s)
    if (out.empty() || out.back() != p) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return Tour{out};
}

// ⌊T⌋: drop every U-turn excursion u, p, u into an edge interior.
inline Tour truncate(const Graph& g, const Tour& t) {
  validate_tour(g, t);
  if (t.size() == 1) return t;
  std::vector<Point> kept;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.at(i);
    const auto& prev = t.at(i + t.size() - 1);
    const auto& next = t.at(i + 1);
    if (p.is_interior() && prev.is_vertex() && prev == next) continue;
    kept.push_back(p);
  }
  if (kept.empty()) return Tour{{t.stops.front()}};
  return merge_repeats(kept);
}

// Hierholzer circuit of a multigraph given as an edge list (with repeats).
// Returns the closed walk without its closing vertex; empty for no edges.
inline std::vector<Vertex> euler_circuit(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    auto [a, b] = edges[i];
    if (a == b) throw Error(ErrorCode::InvalidTour, "loops are not allowed");
    adj[a].emplace_back(b, i);
    adj[b].emplace_back(a, i);
  }
  if (edges.empty()) return {};
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() % 2) throw Error(ErrorCode::OddDegree, "vertex " + std::to_string(v) + " has odd degree");
    std::sort(adj[v].begin(), adj[v].end());
  }
  Vertex start = 0;
  while (adj[start].empty()) ++start;
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> ptr(n, 0);
  std::vector<Vertex> stack{start}, circuit;
  while (!stack.empty()) {
    Vertex v = stack.back();
    auto& p = ptr[v];
    while (p < adj[v].size() && used[adj[v][p].second]) ++p;
    if (p == adj[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][p].second] = 1;
      stack.push_back(adj[v][p].first);
    }
  }
  if (circuit.size() != edges.size() + 1) throw Error(ErrorCode::Disconnected, "multigraph edges are not connected");
  std::reverse(circuit.begin(), circuit.end());
  circuit.pop_back();
  return circuit;
}

}  // namespace deltatour
