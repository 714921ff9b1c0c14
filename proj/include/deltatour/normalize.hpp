#pragma once

#include <map>
#include <optional>

#include "deltatour/coverage.hpp"

namespace deltatour {

namespace detail {

struct Peek {
  Vertex base;
  EdgeId e;
  Rational depth;  // distance from base
};

inline Point peek_point(const Graph& g, const Peek& p) {
  const Edge& ed = g.edge(p.e);
  Vertex other = ed.u == p.base ? ed.v : ed.u;
  return make_point(g, p.base, other, p.depth);
}

// Integral closed walk with U-turns attached at the first visit of their base.
inline Tour assemble(const Graph& g, const std::vector<Vertex>& walk, std::vector<Peek> peeks) {
  std::sort(peeks.begin(), peeks.end(), [&](const Peek& a, const Peek& b) {
    return peek_point(g, a) < peek_point(g, b);
  });
  std::vector<Point> out;
  std::vector<char> done(peeks.size(), 0);
  std::vector<char> seen(g.n(), 0);
  for (Vertex v : walk) {
    out.push_back(Point::vertex(v));
    if (seen[v]) continue;
    seen[v] = 1;
    for (std::size_t i = 0; i < peeks.size(); ++i)
      if (!done[i] && peeks[i].base == v) {
        done[i] = 1;
        out.push_back(peek_point(g, peeks[i]));
        out.push_back(Point::vertex(v));
      }
  }
  // the closing return to walk[0] is implicit, so drop a trailing copy of it
  if (out.size() > 1 && out.back() == out.front()) out.pop_back();
  return Tour{out};
}

}  // namespace detail

// Rewrites a tour into a nice tour (or one with at most two stops) that is no
// longer and passes through a superset of the original's coverage.
inline Tour normalize_nice(const Graph& g, const Tour& t, const std::optional<Rational>& delta = std::nullopt) {
  validate_tour(g, t);
  if (t.size() <= 2) return t;
  if (is_nice(g, t)) return t;
  const Rational one(1);
  const Rational len0 = tour_length(g, t);
  Tour result;

  std::size_t first_vertex = t.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.stops[i].is_vertex()) {
      first_vertex = i;
      break;
    }
  if (first_vertex == t.size()) {
    // everything sits inside one edge: sweep between the extreme stops
    auto [lo, hi] = std::minmax_element(t.stops.begin(), t.stops.end());
    result.stops = {*lo, *hi};
  } else {
    std::vector<Vertex> walk;
    std::map<std::pair<EdgeId, Vertex>, Rational> deepest;
    const std::size_t z = t.size();
    std::size_t i = first_vertex;
    do {
      Vertex a = t.at(i).u;
      walk.push_back(a);
      std::size_t j = i + 1;
      std::vector<Point> run;
      while (t.at(j).is_interior()) run.push_back(t.at(j++));
      Vertex b = t.at(j).u;
      if (!run.empty() && a == b) {
        EdgeId e = g.edge_id(run[0].u, run[0].v);
        for (const auto& p : run) {
          Rational d = a == p.u ? p.lambda : one - p.lambda;
          auto key = std::make_pair(e, a);
          auto it = deepest.find(key);
          if (it == deepest.end() || it->second < d) deepest[key] = d;
        }
      }
      i = j;
    } while ((i - first_vertex) < z);
    // merge consecutive repeats (U-turn excursions left a, a behind)
    std::vector<Vertex> w;
    for (Vertex v : walk)
      if (w.empty() || w.back() != v) w.push_back(v);
    while (w.size() > 1 && w.front() == w.back()) w.pop_back();

    std::vector<int> mult(g.m(), 0);
    if (w.size() > 1)
      for (std::size_t k = 0; k < w.size(); ++k) ++mult[g.edge_id(w[k], w[(k + 1) % w.size()])];
    std::vector<detail::Peek> peeks;
    std::map<EdgeId, std::vector<std::pair<Vertex, Rational>>> by_edge;
    for (auto& [key, d] : deepest) by_edge[key.first].emplace_back(key.second, d);
    for (auto& [e, sides] : by_edge) {
      if (mult[e] > 0) continue;
      if (sides.size() == 1) {
        peeks.push_back({sides[0].first, e, sides[0].second});
        continue;
      }
      Rational sum = sides[0].second + sides[1].second;
      if (sum >= one) {
        mult[e] += 2;
      } else {
        peeks.push_back({g.edge(e).u, e, sum});
      }
    }
    std::vector<std::pair<Vertex, Vertex>> multi;
    for (EdgeId e = 0; e < g.m(); ++e) {
      int m = mult[e] == 0 ? 0 : (mult[e] % 2 ? 1 : 2);
      for (int k = 0; k < m; ++k) multi.emplace_back(g.edge(e).u, g.edge(e).v);
    }
    std::vector<Vertex> circuit = multi.empty() ? std::vector<Vertex>{w[0]} : euler_circuit(g.n(), multi);
    result = detail::assemble(g, circuit, peeks);
  }

  validate_tour(g, result);
  if (tour_length(g, result) > len0) throw Error(ErrorCode::NormalizationFailed, "length increased");
  if (result.size() > 2 && !is_nice(g, result)) throw Error(ErrorCode::NormalizationFailed, "result not nice");
  if (delta && is_delta_tour(g, t, *delta).covered && !is_delta_tour(g, result, *delta).covered)
    throw Error(ErrorCode::NormalizationFailed, "coverage lost");
  return result;
}

}  // namespace deltatour
