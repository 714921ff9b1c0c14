#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "deltatour/tour.hpp"

namespace deltatour {

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct CoverageReport {
  bool covered = true;
  std::optional<Point> witness;
  std::vector<std::vector<Interval>> per_edge;  // indexed by edge id
};

namespace detail {

// Closed sub-segments of edges that the tour passes, positions from edge.u.
struct Passed {
  EdgeId e;
  Rational lo;
  Rational hi;
};

inline std::vector<Passed> passed_set(const Graph& g, const Tour& t) {
  std::vector<Passed> out;
  for (const auto& s : tour_segments(g, t)) out.push_back({s.e, min(s.a, s.b), max(s.a, s.b)});
  if (t.size() == 1 && g.m() > 0) {
    const Point& p = t.stops[0];
    EdgeId e = p.is_interior() ? g.edge_id(p.u, p.v) : g.incident_edges(p.u)[0];
    Rational pos = *position_on(p, g.edge(e));
    out.push_back({e, pos, pos});
  }
  return out;
}

// d(x, P(T)) for every vertex x.
inline std::vector<Rational> vertex_gaps(const Graph& g, const std::vector<Passed>& passed) {
  std::vector<Rational> a(g.n());
  std::vector<char> set(g.n(), 0);
  for (Vertex x = 0; x < g.n(); ++x)
    for (const auto& s : passed) {
      const Edge& f = g.edge(s.e);
      Rational c = min(Rational(g.dist(x, f.u)) + s.lo, Rational(g.dist(x, f.v)) + Rational(1) - s.hi);
      if (!set[x] || c < a[x]) {
        a[x] = c;
        set[x] = 1;
      }
    }
  return a;
}

inline std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Interval> out;
  for (auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

inline std::vector<Interval> edge_intervals(const Graph& g, EdgeId e, const std::vector<Passed>& passed,
                                            const std::vector<Rational>& a, const Rational& delta) {
  std::vector<Interval> raw;
  const Rational zero(0), one(1);
  for (const auto& s : passed)
    if (s.e == e) raw.push_back({max(zero, s.lo - delta), min(one, s.hi + delta)});
  const Edge& ed = g.edge(e);
  Rational ru = delta - a[ed.u];
  if (ru >= zero) raw.push_back({zero, min(one, ru)});
  Rational rv = delta - a[ed.v];
  if (rv >= zero) raw.push_back({max(zero, one - rv), one});
  return merge_intervals(raw);
}

}  // namespace detail

inline std::vector<Interval> covered_intervals(const Graph& g, const Tour& t, const Rational& delta, EdgeId e) {
  validate_tour(g, t);
  auto passed = detail::passed_set(g, t);
  auto a = detail::vertex_gaps(g, passed);
  return detail::edge_intervals(g, e, passed, a, delta);
}

inline CoverageReport is_delta_tour(const Graph& g, const Tour& t, const Rational& delta) {
  validate_tour(g, t);
  require_connected(g);
  CoverageReport rep;
  auto passed = detail::passed_set(g, t);
  auto a = detail::vertex_gaps(g, passed);
  rep.per_edge.resize(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto iv = detail::edge_intervals(g, e, passed, a, delta);
    rep.per_edge[e] = iv;
    if (!rep.covered) continue;
    std::optional<Interval> gap;
    if (iv.empty()) {
      gap = Interval{Rational(0), Rational(1)};
    } else if (iv.front().lo > Rational(0)) {
      gap = Interval{Rational(0), iv.front().lo};
    } else if (iv.size() > 1) {
      gap = Interval{iv[0].hi, iv[1].lo};
    } else if (iv.front().hi < Rational(1)) {
      gap = Interval{iv.front().hi, Rational(1)};
    }
    if (gap) {
      rep.covered = false;
      Rational mid = (gap->lo + gap->hi) / Rational(2);
      const Edge& ed = g.edge(e);
      rep.witness = make_point(g, ed.u, ed.v, mid);
    }
  }
  return rep;
}

inline Rational distance_point_to_tour(const Graph& g, const Tour& t, const Point& p) {
  validate_tour(g, t);
  validate_point(g, p);
  auto passed = detail::passed_set(g, t);
  if (g.m() == 0) return Rational(0);
  auto a = detail::vertex_gaps(g, passed);
  if (p.is_vertex()) return a[p.u];
  EdgeId e = g.edge_id(p.u, p.v);
  Rational best = min(p.lambda + a[p.u], Rational(1) - p.lambda + a[p.v]);
  for (const auto& s : passed) {
    if (s.e != e) continue;
    Rational d = p.lambda < s.lo ? s.lo - p.lambda : (p.lambda > s.hi ? p.lambda - s.hi : Rational(0));
    best = min(best, d);
  }
  return best;
}

inline bool edge_fully_covered(const std::vector<Interval>& iv) {
  return iv.size() == 1 && iv[0].lo == Rational(0) && iv[0].hi == Rational(1);
}

// Coverage of one edge decided from the tour's local structure around it.
// Requires a nice tour; tours with at most two stops use the interval method.
inline bool edge_covered_by_lemmas(const Graph& g, const Tour& t, const Rational& delta, EdgeId e) {
  validate_tour(g, t);
  if (t.size() <= 2) return edge_fully_covered(covered_intervals(g, t, delta, e));
  if (!is_nice(g, t)) throw Error(ErrorCode::NotNice, "tour is not nice");
  const Edge ed = g.edge(e);
  const Rational one(1), two(2), zero(0);
  auto stopped = [&](Vertex x) {
    return std::any_of(t.stops.begin(), t.stops.end(), [&](const Point& p) { return p == Point::vertex(x); });
  };
  // (u, v, λ) with λ ∈ [0,1) for every stop
  struct Rep {
    Vertex u, v;
    Rational lambda;
  };
  std::vector<Rep> reps;
  for (const auto& p : t.stops) {
    if (p.is_vertex()) {
      for (Vertex w : g.neighbors(p.u)) reps.push_back({p.u, w, zero});
    } else {
      reps.push_back({p.u, p.v, p.lambda});
      reps.push_back({p.v, p.u, one - p.lambda});
    }
  }
  bool s1 = stopped(ed.u), s2 = stopped(ed.v);
  // interior stops on e, positions from ed.u
  std::vector<Rational> on_e;
  for (const auto& p : t.stops)
    if (p.is_interior() && p.u == ed.u && p.v == ed.v) on_e.push_back(p.lambda);

  if (!s1 && !s2) {
    std::optional<Rational> b1, b2;  // max of λ − d(x, v) over representations
    for (const auto& r : reps) {
      Rational c1 = r.lambda - Rational(g.dist(ed.u, r.v));
      Rational c2 = r.lambda - Rational(g.dist(ed.v, r.v));
      if (!b1 || c1 > *b1) b1 = c1;
      if (!b2 || c2 > *b2) b2 = c2;
    }
    if (b1 && *b1 + *b2 >= Rational(3) - two * delta) return true;
    bool lo = false, hi = false;
    for (const auto& l : on_e) {
      if (l > zero && l <= delta) lo = true;
      if (l >= one - delta && l < one) hi = true;
    }
    return lo && hi;
  }
  if (s1 != s2) {
    Vertex x1 = s1 ? ed.u : ed.v;
    Vertex x2 = s1 ? ed.v : ed.u;
    auto from_x1 = [&](const Rational& l) { return s1 ? l : one - l; };
    Rational l1 = zero;  // x1 itself
    for (const auto& l : on_e) l1 = max(l1, from_x1(l));
    std::optional<Rational> l2;
    for (const auto& r : reps)
      if (r.v == x2 && (!l2 || r.lambda > *l2)) l2 = r.lambda;
    (void)x1;
    if (l2 && l1 + *l2 >= two - two * delta) return true;
    for (const auto& l : on_e)
      if (from_x1(l) >= one - delta) return true;
    return false;
  }
  if (traversal_counts(g, t)[e] > 0) return true;
  if (delta >= Rational(1, 2)) return true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.at(i);
    if (!(p.is_interior() && p.u == ed.u && p.v == ed.v)) continue;
    const auto& prev = t.at(i + t.size() - 1);
    if (prev != t.at(i + 1) || !prev.is_vertex()) continue;
    Rational depth = prev.u == ed.u ? p.lambda : one - p.lambda;
    if (depth >= one - two * delta) return true;
  }
  return false;
}

}  // namespace deltatour
