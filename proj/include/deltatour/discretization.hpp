#pragma once

#include <algorithm>
#include <vector>

#include "deltatour/point.hpp"

namespace deltatour {

// S_δ, sorted ascending.
inline std::vector<Rational> discretization_set(const Rational& delta) {
  std::vector<Rational> s{Rational(0), delta.frac(), (delta + Rational(1, 2)).frac(), (delta * Rational(2)).frac()};
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// S_δ together with its reflections 1 − s, sorted, inside [0,1].
inline std::vector<Rational> candidate_lambdas(const Rational& delta) {
  std::vector<Rational> out;
  for (const auto& s : discretization_set(delta)) {
    out.push_back(s);
    out.push_back(Rational(1) - s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Rational step_width(const Rational& delta) {
  if (delta <= Rational(0)) throw Error(ErrorCode::DegenerateStep, "delta must be positive");
  auto w = candidate_lambdas(delta);
  std::optional<Rational> best;
  for (const auto& a : w)
    for (const auto& b : w) {
      if (a == b || a == Rational(1) - b) continue;
      Rational d = (a - b).abs();
      if (!best || d < *best) best = d;
    }
  if (!best) throw Error(ErrorCode::DegenerateStep, "no qualifying pair for delta " + delta.str());
  return *best;
}

// P_δ(G), sorted in point order.
inline std::vector<Point> candidate_points(const Graph& g, const Rational& delta) {
  std::vector<Point> out;
  for (Vertex v = 0; v < g.n(); ++v) out.push_back(Point::vertex(v));
  auto lams = candidate_lambdas(delta);
  for (auto e : g.edges())
    for (const auto& l : lams)
      if (l > Rational(0) && l < Rational(1)) out.push_back(Point{e.u, e.v, l});
  std::sort(out.begin(), out.end());
  return out;
}

struct DiscretizationData {
  Rational delta;
  std::vector<Rational> s_set;
  Rational step;
  std::vector<Point> candidates;
};

inline DiscretizationData discretize(const Graph& g, const Rational& delta) {
  return {delta, discretization_set(delta), step_width(delta), candidate_points(g, delta)};
}

}  // namespace deltatour
