#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "deltatour/solvers.hpp"

namespace deltatour {

inline std::vector<Edge> greedy_maximal_matching(const Graph& g) {
  std::vector<char> used(g.n(), 0);
  std::vector<Edge> m;
  for (auto e : g.edges())
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      m.push_back(e);
    }
  return m;
}

// Vertices outside X grouped by their neighborhood (which lies inside X).
inline std::map<std::vector<Vertex>, std::vector<Vertex>> twin_classes(const Graph& g, const std::vector<Vertex>& X) {
  std::vector<char> inX(g.n(), 0);
  for (Vertex x : X) inX[x] = 1;
  std::map<std::vector<Vertex>, std::vector<Vertex>> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (inX[v]) continue;
    std::vector<Vertex> nb(g.neighbors(v).begin(), g.neighbors(v).end());
    for (Vertex y : nb)
      if (!inX[y]) throw Error(ErrorCode::NotAVertexCover, "edge " + std::to_string(v) + " " + std::to_string(y) + " uncovered");
    out[nb].push_back(v);
  }
  return out;
}

struct KernelResult {
  enum class Kind { TrivialYes, TrivialNo, Kernel };
  Kind kind = Kind::TrivialNo;
  std::optional<Tour> witness;   // TrivialYes
  std::optional<Graph> kernel;   // Kernel
  std::vector<Vertex> back_map;  // kernel id -> original id
};

inline Rational kernel_size_bound(const Rational& delta, const Rational& K) {
  Rational q = K / step_width(delta);
  Rational cls((q + Rational(2)).ceil());
  Rational pow(1);
  std::int64_t e = (Rational(2) * q + Rational(1)).ceil();
  for (std::int64_t i = 0; i < e; ++i) pow *= Rational(2);
  return Rational(2) * (q + Rational(1)) + pow * cls;
}

inline KernelResult kernelize(const Graph& g, const Rational& delta, const Rational& K) {
  if (delta <= Rational(0) || delta >= Rational(3, 2))
    throw Error(ErrorCode::DeltaOutOfRange, "kernelization needs 0 < delta < 3/2");
  require_connected(g);
  KernelResult res;
  if (K < Rational(0)) return res;
  detail::ExactSearch search(g, delta);
  if (auto t = search.two_stop_tours((K * Rational(search.L())).floor())) {
    res.kind = KernelResult::Kind::TrivialYes;
    res.witness = t;
    return res;
  }
  if (K == Rational(0)) return res;  // only tours with at most two stops have length 0
  const Rational q = K / step_width(delta);
  auto matching = greedy_maximal_matching(g);
  if (Rational(static_cast<std::int64_t>(matching.size())) > q + Rational(1)) return res;
  std::vector<Vertex> X;
  for (auto e : matching) {
    X.push_back(e.u);
    X.push_back(e.v);
  }
  std::sort(X.begin(), X.end());
  auto classes = twin_classes(g, X);
  // matched vertices that are false twins of a class can be dropped the same way
  std::vector<char> inX(g.n(), 0);
  for (Vertex x : X) inX[x] = 1;
  for (Vertex x : X) {
    std::vector<Vertex> nb(g.neighbors(x).begin(), g.neighbors(x).end());
    auto it = classes.find(nb);
    if (it != classes.end()) it->second.push_back(x);
  }
  const std::int64_t keep = (q + Rational(2)).ceil();
  std::vector<char> drop(g.n(), 0);
  for (auto& [nb, members] : classes) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = static_cast<std::size_t>(keep); i < members.size(); ++i) drop[members[i]] = 1;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!drop[v]) res.back_map.push_back(v);
  res.kind = KernelResult::Kind::Kernel;
  res.kernel = g.induced(res.back_map);
  return res;
}

inline Tour map_tour(const Graph& target, const Tour& t, const std::vector<Vertex>& map) {
  Tour out;
  for (const auto& p : t.stops) {
    if (p.is_vertex()) out.stops.push_back(Point::vertex(map[p.u]));
    else out.stops.push_back(make_point(target, map[p.u], map[p.v], p.lambda));
  }
  return out;
}

inline std::optional<Tour> fpt_decide(const Graph& g, const Rational& delta, const Rational& K) {
  KernelResult kr = kernelize(g, delta, K);
  if (kr.kind == KernelResult::Kind::TrivialYes) return kr.witness;
  if (kr.kind == KernelResult::Kind::TrivialNo) return std::nullopt;
  auto t = brute_force_decide(*kr.kernel, delta, K);
  if (!t) return std::nullopt;
  Tour back = map_tour(g, *t, kr.back_map);
  if (!is_delta_tour(g, back, delta).covered) throw std::logic_error("kernel tour does not lift to the input graph");
  return back;
}

}  // namespace deltatour
