#pragma once

#include <compare>
#include <optional>
#include <string>

#include "deltatour/graph.hpp"
#include "deltatour/rational.hpp"

namespace deltatour {

// A location p(u,v,λ) on the continuous graph. Interior points keep u < v and
// 0 < λ < 1. A vertex w is stored as u = v = w, λ = 0, so a vertex has one
// representation regardless of which edge it was reached through.
struct Point {
  Vertex u = 0;
  Vertex v = 0;
  Rational lambda;

  static Point vertex(Vertex w) { return Point{w, w, Rational(0)}; }

  bool is_vertex() const { return u == v; }
  bool is_interior() const { return u != v; }

  // Vertices sort before interior points, then by (u, v, λ).
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (a.is_interior() != b.is_interior()) return a.is_interior() ? std::strong_ordering::greater
                                                                    : std::strong_ordering::less;
    if (auto c = a.u <=> b.u; c != 0) return c;
    if (auto c = a.v <=> b.v; c != 0) return c;
    return a.lambda <=> b.lambda;
  }
  friend bool operator==(const Point& a, const Point& b) = default;

  std::string str() const {
    if (is_vertex()) return std::to_string(u);
    return std::to_string(u) + " " + std::to_string(v) + " " + lambda.str();
  }
};

// p(a,b,λ) canonicalized; a and b must be adjacent in g.
inline Point make_point(const Graph& g, Vertex a, Vertex b, const Rational& lambda) {
  if (a < 0 || b < 0 || a >= g.n() || b >= g.n() || !g.adjacent(a, b))
    throw Error(ErrorCode::PointNotOnGraph, "no edge " + std::to_string(a) + " " + std::to_string(b));
  if (lambda < Rational(0) || lambda > Rational(1))
    throw Error(ErrorCode::PointNotOnGraph, "lambda " + lambda.str() + " outside [0,1]");
  if (lambda == Rational(0)) return Point::vertex(a);
  if (lambda == Rational(1)) return Point::vertex(b);
  if (a < b) return Point{a, b, lambda};
  return Point{b, a, Rational(1) - lambda};
}

inline void validate_point(const Graph& g, const Point& p) {
  if (p.is_vertex()) {
    if (p.u < 0 || p.u >= g.n() || p.lambda != Rational(0))
      throw Error(ErrorCode::PointNotOnGraph, "bad vertex point " + p.str());
    return;
  }
  if (!(p.u < p.v) || !g.adjacent(p.u, p.v) || p.lambda <= Rational(0) || p.lambda >= Rational(1))
    throw Error(ErrorCode::PointNotOnGraph, "bad point " + p.str());
}

// Position of p along edge e measured from e.u, if p lies on e.
inline std::optional<Rational> position_on(const Point& p, const Edge& e) {
  if (p.is_vertex()) {
    if (p.u == e.u) return Rational(0);
    if (p.u == e.v) return Rational(1);
    return std::nullopt;
  }
  if (p.u == e.u && p.v == e.v) return p.lambda;
  return std::nullopt;
}

// Edge shared by two distinct points, or -1.
inline EdgeId common_edge(const Graph& g, const Point& p, const Point& q) {
  if (p.is_interior()) {
    EdgeId e = g.edge_id(p.u, p.v);
    return position_on(q, g.edge(e)) ? e : -1;
  }
  if (q.is_interior()) {
    EdgeId e = g.edge_id(q.u, q.v);
    return position_on(p, g.edge(e)) ? e : -1;
  }
  return g.edge_id(p.u, q.u);
}

inline Rational point_distance(const Graph& g, const Point& p, const Point& q) {
  validate_point(g, p);
  validate_point(g, q);
  if (p == q) return Rational(0);
  struct End {
    Vertex x;
    Rational d;
  };
  auto ends = [](const Point& a, End out[2]) {
    if (a.is_vertex()) {
      out[0] = {a.u, Rational(0)};
      return 1;
    }
    out[0] = {a.u, a.lambda};
    out[1] = {a.v, Rational(1) - a.lambda};
    return 2;
  };
  End pe[2], qe[2];
  int np = ends(p, pe), nq = ends(q, qe);
  std::optional<Rational> best;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) {
      Rational c = pe[i].d + Rational(g.dist(pe[i].x, qe[j].x)) + qe[j].d;
      if (!best || c < *best) best = c;
    }
  EdgeId e = common_edge(g, p, q);
  if (e >= 0) {
    Rational direct = (*position_on(p, g.edge(e)) - *position_on(q, g.edge(e))).abs();
    if (direct < *best) best = direct;
  }
  return *best;
}

}  // namespace deltatour
