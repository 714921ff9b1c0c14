#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "deltatour/coverage.hpp"
#include "deltatour/normalize.hpp"
#include "deltatour/oracles.hpp"

namespace deltatour {

// Vertex labels with interned strings, so instances with millions of
// vertices stay small.
class Labels {
 public:
  void resize(std::size_t n) { id_.resize(n, -1); }
  void set(Vertex v, const std::string& name) {
    if (static_cast<std::size_t>(v) >= id_.size()) id_.resize(v + 1, -1);
    auto it = index_.find(name);
    int k;
    if (it == index_.end()) {
      k = static_cast<int>(names_.size());
      names_.push_back(name);
      index_.emplace(name, k);
    } else {
      k = it->second;
    }
    id_[v] = k;
  }
  const std::string& get(Vertex v) const { return names_.at(id_.at(v)); }
  bool has(Vertex v) const { return static_cast<std::size_t>(v) < id_.size() && id_[v] >= 0; }
  std::size_t size() const { return id_.size(); }
  bool complete() const { return std::all_of(id_.begin(), id_.end(), [](int x) { return x >= 0; }); }

 private:
  std::vector<int> id_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// A gadget path recorded during construction, re-checked by validators.
struct PathRecord {
  std::string name;
  Vertex from;
  Vertex to;
  std::int64_t length;
  Vertex first_internal = -1;  // internal vertices are consecutive ids

  std::vector<Vertex> walk() const {
    std::vector<Vertex> w{from};
    for (std::int64_t i = 0; i + 1 < length; ++i) w.push_back(static_cast<Vertex>(first_internal + i));
    w.push_back(to);
    return w;
  }
};

struct LabeledReductionInstance {
  Graph graph;
  Rational delta;
  Rational budget;
  Labels labels;
  std::vector<PathRecord> paths;
  std::map<std::string, Vertex> named;  // bookkeeping vertices by role
};

namespace detail {

// Incremental edge-list builder.
struct Builder {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  Labels labels;
  std::vector<PathRecord> paths;

  Vertex add(const std::string& label) {
    labels.set(n, label);
    return n++;
  }
  void link(Vertex a, Vertex b) { edges.emplace_back(a, b); }
  // path of the given length; internal vertices get the label "in:<name>"
  void path(Vertex from, Vertex to, std::int64_t length, const std::string& name) {
    Vertex prev = from;
    const Vertex first = n;
    for (std::int64_t i = 1; i < length; ++i) {
      Vertex x = add("in:" + name);
      link(prev, x);
      prev = x;
    }
    link(prev, to);
    paths.push_back({name, from, to, length, length > 1 ? first : -1});
  }
};

}  // namespace detail

// ---------------------------------------------------------------- chain gadget

struct ChainGadget {
  Graph graph;
  Vertex ell = 0;
  Vertex r = 0;
  std::vector<Vertex> interior;
  std::vector<Vertex> hamiltonian_path;  // ell .. r
};

inline ChainGadget chain_gadget(int k) {
  if (k < 1) throw Error(ErrorCode::BadK, "chain gadget needs k >= 1");
  auto v = [](int i, int j) { return 1 + 6 * (i - 1) + (j - 1); };
  ChainGadget cg;
  cg.ell = 0;
  cg.r = 6 * k + 1;
  std::vector<std::pair<Vertex, Vertex>> e;
  const int inner[8][2] = {{1, 2}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {3, 6}, {4, 5}, {5, 6}};
  for (int i = 1; i <= k; ++i) {
    for (auto& p : inner) e.emplace_back(v(i, p[0]), v(i, p[1]));
    if (i < k) e.emplace_back(v(i, 6), v(i + 1, 1));
  }
  e.emplace_back(cg.ell, v(1, 1));
  e.emplace_back(cg.r, v(k, 6));
  cg.graph = build_graph(e, 6 * k + 2);
  cg.hamiltonian_path.push_back(cg.ell);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= 6; ++j) {
      cg.interior.push_back(v(i, j));
      cg.hamiltonian_path.push_back(v(i, j));
    }
  cg.hamiltonian_path.push_back(cg.r);
  return cg;
}

// 2-colouring, or nullopt when the graph has an odd cycle.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
  std::vector<int> col(g.n(), -1);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (col[s] >= 0) continue;
    col[s] = 0;
    std::vector<Vertex> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (Vertex y : g.neighbors(q[h])) {
        if (col[y] < 0) {
          col[y] = 1 - col[q[h]];
          q.push_back(y);
        } else if (col[y] == col[q[h]]) {
          return std::nullopt;
        }
      }
  }
  return col;
}

inline bool is_cubic(const Graph& g) {
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) != 3) return false;
  return true;
}

// ------------------------------------------------- vertex cover -> cycles

struct VcCycleInstance {
  Graph H;
  Labels labels;
  int chain_k = 0;
  Graph source;
  std::map<std::tuple<Vertex, int, Vertex>, Vertex> vid;            // (u, i, w) -> u_i^w
  std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> chains;  // (a, b) -> hamiltonian path a..b
  std::vector<Vertex> chain_path(Vertex a, Vertex b) const {
    auto it = chains.find({a, b});
    if (it != chains.end()) return it->second;
    auto p = chains.at({b, a});
    std::reverse(p.begin(), p.end());
    return p;
  }
};

inline int vc_chain_length(const Rational& alpha, const Rational& beta) {
  return static_cast<int>(std::max<std::int64_t>(12, (Rational(2) * alpha / beta).ceil()));
}

inline VcCycleInstance vc_to_cycle_subpartition_instance(const Graph& g, const Rational& alpha, const Rational& beta,
                                                         int chain_k = -1) {
  if (!is_cubic(g)) throw Error(ErrorCode::NotCubic, "source graph must be cubic");
  if (!g.is_connected()) throw Error(ErrorCode::NotConnected, "source graph must be connected");
  VcCycleInstance inst;
  inst.source = g;
  inst.chain_k = chain_k > 0 ? chain_k : vc_chain_length(alpha, beta);
  detail::Builder b;
  auto name = [](Vertex u, int i, Vertex w) {
    return "x" + std::to_string(u) + "_" + std::to_string(i) + "^" + std::to_string(w);
  };
  auto node = [&](Vertex u, int i, Vertex w) {
    Vertex id = b.add(name(u, i, w));
    inst.vid[{u, i, w}] = id;
    return id;
  };
  const ChainGadget cg = chain_gadget(inst.chain_k);
  auto chain = [&](Vertex a, Vertex c) {
    // ell is identified with a and r with c
    std::vector<Vertex> map(cg.graph.n(), -1);
    map[cg.ell] = a;
    map[cg.r] = c;
    std::string tag = "chain[" + b.labels.get(a) + "," + b.labels.get(c) + "]";
    for (Vertex x : cg.interior) map[x] = b.add(tag);
    for (auto e : cg.graph.edges()) b.link(map[e.u], map[e.v]);
    std::vector<Vertex> hp;
    for (Vertex x : cg.hamiltonian_path) hp.push_back(map[x]);
    inst.chains[{a, c}] = hp;
  };
  for (Vertex u = 0; u < g.n(); ++u) {
    std::vector<Vertex> nb(g.neighbors(u).begin(), g.neighbors(u).end());
    for (Vertex w : nb) {
      node(u, 1, w);
      node(u, 2, w);
    }
    for (int i = 0; i < 3; ++i) b.link(inst.vid[{u, 2, nb[i]}], inst.vid[{u, 1, nb[(i + 1) % 3]}]);
    for (Vertex w : nb) chain(inst.vid[{u, 1, w}], inst.vid[{u, 2, w}]);
  }
  for (auto e : g.edges()) {
    Vertex u = e.u, v = e.v;
    for (int i = 3; i <= 6; ++i) node(u, i, v);
    for (int i = 3; i <= 6; ++i) node(v, i, u);
    auto U = [&](int i) { return inst.vid[{u, i, v}]; };
    auto V = [&](int i) { return inst.vid[{v, i, u}]; };
    b.link(U(1), U(6));
    b.link(U(2), U(3));
    b.link(U(3), V(4));
    b.link(U(4), U(5));
    b.link(U(4), V(3));
    b.link(U(5), V(6));
    b.link(U(6), V(5));
    b.link(V(1), V(6));
    b.link(V(2), V(3));
    b.link(V(4), V(5));
    chain(U(3), U(4));
    chain(U(5), U(6));
    chain(V(3), V(4));
    chain(V(5), V(6));
  }
  inst.H = build_graph(b.edges, b.n);
  inst.labels = std::move(b.labels);
  return inst;
}

inline CycleSubpartition cycle_subpartition_from_vc(const VcCycleInstance& inst, const std::vector<Vertex>& Z,
                                                    const Rational& alpha, const Rational& beta) {
  const Graph& g = inst.source;
  std::vector<char> inZ(g.n(), 0);
  for (Vertex z : Z) inZ[z] = 1;
  for (auto e : g.edges())
    if (!inZ[e.u] && !inZ[e.v]) throw Error(ErrorCode::NotAVertexCover, "Z misses an edge");
  CycleSubpartition cs;
  cs.params = CycleParams{alpha, beta, Rational(0), Rational(0)};
  auto id = [&](Vertex u, int i, Vertex w) { return inst.vid.at({u, i, w}); };
  auto append = [](std::vector<Vertex>& cy, const std::vector<Vertex>& seg) {
    for (Vertex x : seg)
      if (cy.empty() || cy.back() != x) cy.push_back(x);
  };
  for (Vertex u = 0; u < g.n(); ++u) {
    if (inZ[u]) continue;
    std::vector<Vertex> cy;
    for (Vertex w : g.neighbors(u)) append(cy, inst.chain_path(id(u, 1, w), id(u, 2, w)));
    cs.cycles.push_back(cy);
  }
  auto two_cycle = [&](Vertex u, Vertex v) {
    std::vector<Vertex> cy{id(u, 1, v)};
    append(cy, inst.chain_path(id(u, 6, v), id(u, 5, v)));
    append(cy, inst.chain_path(id(u, 4, v), id(u, 3, v)));
    append(cy, inst.chain_path(id(u, 2, v), id(u, 1, v)));
    cy.pop_back();
    return cy;
  };
  auto three_cycle = [&](Vertex u, Vertex v) {
    std::vector<Vertex> cy{id(u, 1, v)};
    append(cy, inst.chain_path(id(u, 6, v), id(u, 5, v)));
    append(cy, inst.chain_path(id(v, 6, u), id(v, 5, u)));
    append(cy, inst.chain_path(id(v, 4, u), id(v, 3, u)));
    append(cy, inst.chain_path(id(u, 4, v), id(u, 3, v)));
    append(cy, inst.chain_path(id(u, 2, v), id(u, 1, v)));
    cy.pop_back();
    return cy;
  };
  for (auto e : g.edges()) {
    if (inZ[e.u] && inZ[e.v]) {
      cs.cycles.push_back(two_cycle(e.u, e.v));
      cs.cycles.push_back(two_cycle(e.v, e.u));
    } else if (inZ[e.u]) {
      cs.cycles.push_back(three_cycle(e.u, e.v));
    } else {
      cs.cycles.push_back(three_cycle(e.v, e.u));
    }
  }
  validate_cycles(inst.H, cs);
  return cs;
}

inline CycleParams tour_cycle_params(const Rational& delta) {
  return CycleParams{Rational(4) * delta, Rational(1), Rational(2) - Rational(2) * delta, Rational(-4) * delta};
}

inline Tour cycle_subpartition_to_tour(const Graph& g, const CycleSubpartition& c, const Rational& delta) {
  if (delta <= Rational(0) || delta >= Rational(1, 2)) throw Error(ErrorCode::DeltaOutOfRange, "need 0 < delta < 1/2");
  validate_cycles(g, c);
  require_connected(g);
  std::vector<int> par(g.n());
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  std::vector<char> used(g.m(), 0);
  std::vector<std::pair<Vertex, Vertex>> multi;
  for (const auto& cy : c.cycles)
    for (std::size_t i = 0; i < cy.size(); ++i) {
      Vertex a = cy[i], b = cy[(i + 1) % cy.size()];
      used[g.edge_id(a, b)] = 1;
      multi.emplace_back(a, b);
      par[find(a)] = find(b);
    }
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (used[e] || find(ed.u) == find(ed.v)) continue;
    par[find(ed.u)] = find(ed.v);
    used[e] = 1;
    multi.emplace_back(ed.u, ed.v);
    multi.emplace_back(ed.u, ed.v);
  }
  std::vector<detail::Peek> peeks;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!used[e]) peeks.push_back({g.edge(e).u, e, Rational(1) - Rational(2) * delta});
  std::vector<Vertex> walk = multi.empty() ? std::vector<Vertex>{0} : euler_circuit(g.n(), multi);
  return detail::assemble(g, walk, peeks);
}

inline CycleSubpartition tour_to_cycle_subpartition(const Graph& g, const Tour& t, const Rational& delta) {
  if (delta <= Rational(0) || delta >= Rational(1, 2)) throw Error(ErrorCode::DeltaOutOfRange, "need 0 < delta < 1/2");
  validate_tour(g, t);
  if (t.size() < 3 || !is_nice(g, t)) throw Error(ErrorCode::NotNice, "tour must be nice");
  auto trav = traversal_counts(g, t);
  std::vector<char> stopped(g.n(), 0);
  for (const auto& p : t.stops)
    if (p.is_vertex()) stopped[p.u] = 1;
  const Rational depth = Rational(1) - Rational(2) * delta;
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (trav[e] > 0) continue;
    const Edge& ed = g.edge(e);
    bool ok = stopped[ed.u] && stopped[ed.v];
    bool peek = false;
    for (std::size_t i = 0; i < t.size() && ok; ++i) {
      const auto& p = t.at(i);
      if (!(p.is_interior() && p.u == ed.u && p.v == ed.v)) continue;
      Vertex base = t.at(i + 1).u;
      peek = (base == ed.u ? p.lambda : Rational(1) - p.lambda) == depth;
    }
    if (!ok || !peek) throw Error(ErrorCode::BadEdgeInteraction, "edge " + std::to_string(ed.u) + " " + std::to_string(ed.v));
  }
  std::vector<std::pair<Vertex, Vertex>> odd;
  std::vector<int> deg(g.n(), 0);
  for (EdgeId e = 0; e < g.m(); ++e)
    if (trav[e] % 2) {
      odd.emplace_back(g.edge(e).u, g.edge(e).v);
      ++deg[g.edge(e).u];
      ++deg[g.edge(e).v];
    }
  for (int d : deg)
    if (d != 0 && d != 2) throw Error(ErrorCode::BadEdgeInteraction, "odd-traversed edges do not form disjoint cycles");
  CycleSubpartition cs;
  cs.params = tour_cycle_params(delta);
  Graph f = build_graph(odd, g.n());
  std::vector<char> seen(g.n(), 0);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s] || deg[s] == 0) continue;
    std::vector<Vertex> cy;
    Vertex prev = -1, cur = s;
    while (!seen[cur]) {
      seen[cur] = 1;
      cy.push_back(cur);
      Vertex nxt = f.neighbors(cur)[0] != prev ? f.neighbors(cur)[0] : f.neighbors(cur)[1];
      prev = cur;
      cur = nxt;
    }
    cs.cycles.push_back(cy);
  }
  return cs;
}

// ----------------------------------------------------------------- subdivision

struct Subdivision {
  Graph original;
  Graph graph;
  int k = 1;
  std::vector<std::pair<EdgeId, int>> piece;  // subdivided edge id -> (original edge, index i)

  Vertex node(EdgeId e, int i) const {
    const Edge& ed = original.edge(e);
    if (i == 0) return ed.u;
    if (i == k) return ed.v;
    return original.n() + e * (k - 1) + (i - 1);
  }

  Point lift_point(const Point& p) const {
    validate_point(original, p);
    if (p.is_vertex()) return p;
    EdgeId e = original.edge_id(p.u, p.v);
    Rational t = p.lambda * Rational(k);
    std::int64_t f = t.floor();
    if (t.is_integer()) return Point::vertex(node(e, static_cast<int>(f)));
    return make_point(graph, node(e, static_cast<int>(f)), node(e, static_cast<int>(f) + 1), t - Rational(f));
  }

  Point project_point(const Point& q) const {
    validate_point(graph, q);
    if (q.is_vertex()) {
      if (q.u < original.n()) return q;
      int off = q.u - original.n();
      EdgeId e = off / (k - 1);
      int i = off % (k - 1) + 1;
      const Edge& ed = original.edge(e);
      return make_point(original, ed.u, ed.v, Rational(i, k));
    }
    auto [e, i] = piece[graph.edge_id(q.u, q.v)];
    const Edge& ed = original.edge(e);
    Rational mu = node(e, i) == q.u ? q.lambda : Rational(1) - q.lambda;
    return make_point(original, ed.u, ed.v, (Rational(i) + mu) / Rational(k));
  }

  Tour lift_tour(const Tour& t) const {
    validate_tour(original, t);
    if (t.size() == 1) return Tour{{lift_point(t.stops[0])}};
    std::vector<Point> out;
    for (std::size_t s = 0; s < t.size(); ++s) {
      const Point& p = t.at(s);
      const Point& q = t.at(s + 1);
      out.push_back(lift_point(p));
      EdgeId e = common_edge(original, p, q);
      Rational a = *position_on(p, original.edge(e)) * Rational(k);
      Rational b = *position_on(q, original.edge(e)) * Rational(k);
      if (a < b) {
        for (std::int64_t j = a.floor() + 1; j < b.ceil(); ++j) out.push_back(Point::vertex(node(e, static_cast<int>(j))));
      } else {
        for (std::int64_t j = a.ceil() - 1; j > b.floor(); --j) out.push_back(Point::vertex(node(e, static_cast<int>(j))));
      }
    }
    return merge_repeats(out);
  }

  Tour project_tour(const Tour& t) const {
    validate_tour(graph, t);
    Tour out;
    for (const auto& p : t.stops) out.stops.push_back(project_point(p));
    return out;
  }
};

inline Subdivision subdivide(const Graph& g, int k) {
  if (k < 1) throw Error(ErrorCode::BadK, "subdivision factor must be positive");
  Subdivision s;
  s.original = g;
  s.k = k;
  std::vector<std::pair<Vertex, Vertex>> e;
  std::vector<std::pair<EdgeId, int>> tag;
  for (EdgeId id = 0; id < g.m(); ++id)
    for (int i = 0; i < k; ++i) {
      e.emplace_back(s.node(id, i), s.node(id, i + 1));
      tag.emplace_back(id, i);
    }
  s.graph = build_graph(e, g.n() + g.m() * (k - 1));
  s.piece.resize(s.graph.m());
  for (std::size_t i = 0; i < e.size(); ++i) s.piece[s.graph.edge_id(e[i].first, e[i].second)] = tag[i];
  return s;
}

// ------------------------------------------- split graphs and dominating sets

struct SplitDomInstance {
  Graph source;
  Graph graph;
  Rational delta;
  SplitPartition split;
};

inline bool has_small_dominating_set(const Graph& g, int size) {
  for (Vertex a = 0; a < g.n(); ++a) {
    if (dominates(g, {a})) return true;
    if (size >= 2)
      for (Vertex b = a + 1; b < g.n(); ++b)
        if (dominates(g, {a, b})) return true;
  }
  return false;
}

inline SplitDomInstance split_dom_to_tour_instance(const Graph& g, const Rational& delta) {
  if (delta < Rational(3, 2)) throw Error(ErrorCode::DeltaOutOfRange, "need delta >= 3/2");
  require_connected(g);
  SplitDomInstance inst;
  inst.split = split_partition(g);
  if (has_small_dominating_set(g, 2)) throw Error(ErrorCode::TrivialInstance, "graph has a dominating set of size <= 2");
  inst.source = g;
  inst.delta = delta;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (auto ed : g.edges()) e.emplace_back(ed.u, ed.v);
  int n = g.n();
  if (delta >= Rational(2)) {
    std::int64_t len = delta.floor() - 1;
    for (Vertex x : inst.split.independent) {
      Vertex prev = x;
      for (std::int64_t i = 0; i < len; ++i) {
        e.emplace_back(prev, n);
        prev = n++;
      }
    }
  }
  inst.graph = build_graph(e, n);
  return inst;
}

// Replace independent-side members by a clique neighbour.
inline std::vector<Vertex> clique_side_set(const Graph& g, const SplitPartition& sp, const std::vector<Vertex>& S) {
  std::vector<char> inC(g.n(), 0);
  for (Vertex c : sp.clique) inC[c] = 1;
  std::vector<Vertex> out;
  for (Vertex v : S) {
    if (inC[v]) {
      out.push_back(v);
      continue;
    }
    for (Vertex y : g.neighbors(v))
      if (inC[y]) {
        out.push_back(y);
        break;
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Tour dom_set_to_tour(const SplitDomInstance& inst, const std::vector<Vertex>& S) {
  if (!dominates(inst.source, S)) throw Error(ErrorCode::NotDominating, "set does not dominate");
  auto C = clique_side_set(inst.source, inst.split, S);
  Tour t = vertex_tour(C);
  if (!is_delta_tour(inst.graph, t, inst.delta).covered) throw std::logic_error("dominating-set tour does not cover");
  return t;
}

inline std::vector<Vertex> tour_to_dom_set(const SplitDomInstance& inst, const Tour& t) {
  if (!is_delta_tour(inst.graph, t, inst.delta).covered) throw Error(ErrorCode::NotATour, "not a delta-tour");
  std::vector<char> inC(inst.graph.n(), 0);
  for (Vertex c : inst.split.clique) inC[c] = 1;
  std::vector<Vertex> S;
  for (const auto& p : t.stops) {
    if (p.is_vertex()) {
      if (inC[p.u]) S.push_back(p.u);
    } else {
      if (inC[p.u]) S.push_back(p.u);
      if (inC[p.v]) S.push_back(p.v);
    }
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  return S;
}

// ------------------------------------------------------- small delta, NP-hard

struct SmallDeltaInstance {
  LabeledReductionInstance inst;
  Graph source;
  SplitPartition split;
  Vertex v0 = 0, v1 = 0, v2 = 0;
  Rational eps0;
  int k = 0;
};

inline SmallDeltaInstance small_delta_np_instance(const Graph& g, int k, const Rational& eps) {
  if (k < 1) throw Error(ErrorCode::BadK, "k must be positive");
  if (eps <= Rational(0)) throw Error(ErrorCode::DeltaOutOfRange, "eps must be positive");
  require_connected(g);
  SmallDeltaInstance s;
  s.split = split_partition(g);
  if (2 * static_cast<std::int64_t>(g.m()) == static_cast<std::int64_t>(g.n()) * (g.n() - 1))
    throw Error(ErrorCode::Complete, "graph is complete");
  s.source = g;
  s.k = k;
  s.eps0 = min(eps, Rational(1, 2)) / Rational(4 * k + 3);
  detail::Builder b;
  std::vector<char> inC(g.n(), 0);
  for (Vertex c : s.split.clique) inC[c] = 1;
  for (Vertex v = 0; v < g.n(); ++v) b.add(inC[v] ? "clique" : "independent");
  for (auto e : g.edges()) b.link(e.u, e.v);
  s.v0 = b.add("v0");
  s.v1 = b.add("v1");
  s.v2 = b.add("v2");
  b.link(s.v0, s.v1);
  b.link(s.v1, s.v2);
  for (Vertex c : s.split.clique) b.link(s.v0, c);
  s.inst.graph = build_graph(b.edges, b.n);
  s.inst.labels = std::move(b.labels);
  s.inst.delta = Rational(2) - s.eps0;
  s.inst.budget = Rational(4 * k + 2) * s.eps0;
  s.inst.named = {{"v0", s.v0}, {"v1", s.v1}, {"v2", s.v2}};
  return s;
}

inline Tour small_delta_dom_to_tour(const SmallDeltaInstance& s, const std::vector<Vertex>& S) {
  if (!dominates(s.source, S)) throw Error(ErrorCode::NotDominating, "set does not dominate");
  const Graph& G = s.inst.graph;
  std::vector<Point> stops{Point::vertex(s.v0), make_point(G, s.v0, s.v1, s.eps0)};
  for (Vertex c : clique_side_set(s.source, s.split, S)) {
    stops.push_back(Point::vertex(s.v0));
    stops.push_back(make_point(G, s.v0, c, Rational(2) * s.eps0));
  }
  return Tour{stops};
}

inline std::vector<Vertex> small_delta_tour_to_dom(const SmallDeltaInstance& s, const Tour& t) {
  const Graph& G = s.inst.graph;
  if (!is_delta_tour(G, t, s.inst.delta).covered) throw Error(ErrorCode::NotATour, "not a delta-tour");
  std::vector<Vertex> S;
  for (Vertex c : s.split.clique) {
    EdgeId e = G.edge_id(s.v0, c);
    for (const auto& p : t.stops) {
      auto pos = position_on(p, G.edge(e));
      if (!pos) continue;
      Rational from_v0 = G.edge(e).u == s.v0 ? *pos : Rational(1) - *pos;
      if (from_v0 >= s.eps0) {
        S.push_back(c);
        break;
      }
    }
  }
  return S;
}

// ---------------------------------------------------------------- binary CSP

struct BinaryCsp {
  int variables = 0;
  int domain = 0;  // values 1..domain
  struct Constraint {
    int a = 0, b = 0;  // a < b
    std::vector<std::pair<int, int>> allowed;
  };
  std::vector<Constraint> constraints;
};

inline bool csp_satisfiable(const BinaryCsp& csp) {
  std::vector<int> val(csp.variables, 1);
  std::vector<std::vector<const BinaryCsp::Constraint*>> by_last(csp.variables);
  for (const auto& c : csp.constraints) by_last[std::max(c.a, c.b)].push_back(&c);
  std::function<bool(int)> rec = [&](int i) {
    if (i == csp.variables) return true;
    for (int x = 1; x <= csp.domain; ++x) {
      val[i] = x;
      bool ok = true;
      for (auto* c : by_last[i])
        if (std::find(c->allowed.begin(), c->allowed.end(), std::make_pair(val[c->a], val[c->b])) == c->allowed.end()) {
          ok = false;
          break;
        }
      if (ok && rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

namespace detail {

// Orient constraints a < b, check the constraint graph, sort by (a, b).
inline BinaryCsp canonical_csp(BinaryCsp csp) {
  const int k = static_cast<int>(csp.constraints.size());
  if (k < 6 || k % 3 != 0) throw Error(ErrorCode::BadK, "need k >= 6 constraints with 3 | k");
  std::vector<int> deg(csp.variables, 0);
  std::set<std::pair<int, int>> seen;
  for (auto& c : csp.constraints) {
    if (c.a > c.b) {
      std::swap(c.a, c.b);
      for (auto& p : c.allowed) std::swap(p.first, p.second);
    }
    if (c.a == c.b || c.a < 0 || c.b >= csp.variables || !seen.insert({c.a, c.b}).second)
      throw Error(ErrorCode::NotCubicConstraintGraph, "constraint graph is not simple");
    ++deg[c.a];
    ++deg[c.b];
  }
  for (int d : deg)
    if (d != 3) throw Error(ErrorCode::NotCubicConstraintGraph, "constraint graph is not cubic");
  std::sort(csp.constraints.begin(), csp.constraints.end(),
            [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return csp;
}

inline std::string csp_edge_name(const BinaryCsp& csp, int idx) {
  return "e" + std::to_string(idx) + "(" + std::to_string(csp.constraints[idx].a) + "," +
         std::to_string(csp.constraints[idx].b) + ")";
}

inline std::string csp_candidate_tag(const BinaryCsp& csp, int idx, int x, int y) {
  return "[" + csp_edge_name(csp, idx) + "," + std::to_string(x) + ":" + std::to_string(y) + "]";
}

}  // namespace detail

inline LabeledReductionInstance csp_to_tour_instance(const BinaryCsp& csp_in, int r,
                                                     std::int64_t max_vertices = 50'000'000) {
  const BinaryCsp csp = detail::canonical_csp(csp_in);
  const int k = static_cast<int>(csp.constraints.size());
  if (r < 0) throw Error(ErrorCode::BadK, "r must be nonnegative");
  const std::int64_t n = csp.domain;
  LabeledReductionInstance out;
  detail::Builder b;
  if (n < k) {
    const std::int64_t np = 9 * k + r;
    const std::int64_t n0 = csp_satisfiable(csp) ? k + 2 : k + 3;
    Vertex v0 = b.add("v0");
    // spine v0 .. v_{n0}; the pendants hang off v1
    std::vector<Vertex> spine{v0};
    for (std::int64_t i = 1; i < n0; ++i) spine.push_back(b.add("in:spine"));
    Vertex end = b.add("end");
    spine.push_back(end);
    for (std::size_t i = 0; i + 1 < spine.size(); ++i) b.link(spine[i], spine[i + 1]);
    b.paths.push_back({"spine", v0, end, n0, spine[1]});
    while (b.n < np) b.link(spine[1], b.add("pad"));
    out.graph = build_graph(b.edges, b.n);
    out.labels = std::move(b.labels);
    out.paths = std::move(b.paths);
    out.delta = Rational(1);
    out.budget = Rational(2 * k);
    out.named = {{"v0", v0}, {"v1", spine[1]}, {"pad-hub", spine[1]}};
    return out;
  }
  const std::int64_t delta = 42 * static_cast<std::int64_t>(k) * n * n * n;
  if ((9 * k + r) * delta > max_vertices) throw Error(ErrorCode::TooLarge, "instance exceeds the vertex cap");
  auto ename = [&](int idx) { return detail::csp_edge_name(csp, idx); };
  auto named = [&](const std::string& s) {
    Vertex v = b.add(s);
    out.named[s] = v;
    return v;
  };
  // constraint gadgets
  std::vector<std::vector<Vertex>> cand(k);
  for (int i = 0; i < k; ++i) {
    const auto& c = csp.constraints[i];
    std::string e = ename(i);
    for (int var : {c.a, c.b})
      for (int bit : {0, 1}) {
        std::string tag = "[" + e + ",v" + std::to_string(var) + "," + std::to_string(bit) + "]";
        Vertex s = named("s" + tag);
        Vertex t = named("t" + tag);
        b.path(s, t, delta - 4 * n, "R" + tag);
      }
    for (int tail : {1, 2}) {
      std::string tag = "[" + e + ",tail" + std::to_string(tail) + "]";
      Vertex s = named("s" + tag);
      Vertex t = named("t" + tag);
      b.path(s, t, delta - 2 * n, "R" + tag);
    }
    for (auto [x, y] : c.allowed) {
      std::string tag = detail::csp_candidate_tag(csp, i, x, y);
      Vertex a = named("a" + tag);
      cand[i].push_back(a);
      auto s = [&](int var, int bit) {
        return out.named.at("s[" + e + ",v" + std::to_string(var) + "," + std::to_string(bit) + "]");
      };
      b.path(a, s(c.a, 0), 2 * n + 2 * x, "P" + tag + "u0");
      b.path(a, s(c.a, 1), 4 * n - 2 * x, "P" + tag + "u1");
      b.path(a, s(c.b, 0), 2 * n + 2 * y, "P" + tag + "v0");
      b.path(a, s(c.b, 1), 4 * n - 2 * y, "P" + tag + "v1");
      b.path(a, out.named.at("s[" + e + ",tail1]"), 2 * n, "P" + tag + "tail1");
      b.path(a, out.named.at("s[" + e + ",tail2]"), 2 * n, "P" + tag + "tail2");
    }
  }
  // middle gadgets
  for (int var = 0; var < csp.variables; ++var) {
    std::vector<int> inc;
    for (int i = 0; i < k; ++i)
      if (csp.constraints[i].a == var || csp.constraints[i].b == var) inc.push_back(i);
    for (int x : inc)
      for (int y : inc) {
        if (x == y) continue;
        std::string vs = "v" + std::to_string(var);
        Vertex from = out.named.at("t[" + ename(x) + "," + vs + ",0]");
        Vertex to = out.named.at("t[" + ename(y) + "," + vs + ",1]");
        b.path(from, to, 2 * n, "M[" + ename(x) + "," + vs + "," + ename(y) + "]");
      }
  }
  // tour gadgets
  std::vector<Vertex> ys(k), zs(k);
  for (int i = 0; i < k; ++i) {
    ys[i] = named("y" + std::to_string(i + 1));
    zs[i] = named("z" + std::to_string(i + 1));
  }
  for (int i = 0; i < k; ++i) {
    b.path(ys[i], zs[(i + 1) % k], delta - 4 * n + 1, "R" + std::to_string(i + 1) + "," + std::to_string((i + 1) % k + 1));
    for (std::size_t j = 0; j < cand[i].size(); ++j) {
      auto [x, y] = csp.constraints[i].allowed[j];
      std::string tag = detail::csp_candidate_tag(csp, i, x, y);
      b.path(cand[i][j], ys[i], 2 * n, "Y" + tag);
      b.path(cand[i][j], zs[i], 2 * n, "Z" + tag);
    }
  }
  const std::int64_t target = (9 * k + r) * delta;
  if (b.n > target) throw std::logic_error("gadget graph exceeds the target order");
  // padding hangs off the neighbour of the first tail end
  Vertex tend = out.named.at("t[" + ename(0) + ",tail1]");
  Vertex hub = -1;
  for (auto [x, y] : b.edges) {
    if (x == tend) hub = y;
    if (y == tend) hub = x;
  }
  out.named["pad-hub"] = hub;
  while (b.n < target) b.link(hub, b.add("pad"));
  out.graph = build_graph(b.edges, b.n);
  out.labels = std::move(b.labels);
  out.paths = std::move(b.paths);
  out.delta = Rational(delta);
  out.budget = Rational(k) * Rational(delta + 1);
  return out;
}

// Closed vertex walk through the candidates chosen by a satisfying assignment
// (values indexed by variable): a_i -> y_i -> z_{i+1} -> a_{i+1}, each leg of
// length delta + 1.
inline Tour csp_assignment_tour(const LabeledReductionInstance& inst, const BinaryCsp& csp_in,
                                const std::vector<int>& value) {
  const BinaryCsp csp = detail::canonical_csp(csp_in);
  const int k = static_cast<int>(csp.constraints.size());
  std::map<std::string, const PathRecord*> by_name;
  for (const auto& p : inst.paths) by_name[p.name] = &p;
  std::vector<std::string> tags;
  for (int i = 0; i < k; ++i) {
    const auto& c = csp.constraints[i];
    std::pair<int, int> pick{value.at(c.a), value.at(c.b)};
    if (std::find(c.allowed.begin(), c.allowed.end(), pick) == c.allowed.end())
      throw Error(ErrorCode::InvalidTour, "assignment violates constraint " + detail::csp_edge_name(csp, i));
    tags.push_back(detail::csp_candidate_tag(csp, i, pick.first, pick.second));
  }
  auto path = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(ErrorCode::InvalidTour, "no gadget path " + name);
    return it->second->walk();
  };
  std::vector<Vertex> walk;
  auto append = [&](std::vector<Vertex> w) {
    for (Vertex x : w)
      if (walk.empty() || walk.back() != x) walk.push_back(x);
  };
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    append(path("Y" + tags[i]));
    append(path("R" + std::to_string(i + 1) + "," + std::to_string(j + 1)));
    auto back = path("Z" + tags[j]);
    std::reverse(back.begin(), back.end());
    append(back);
  }
  walk.pop_back();
  return vertex_tour(walk);
}

// Walks every recorded path through its internal vertices; true when each has
// exactly the recorded length and degree-2 interior.
inline bool validate_paths(const LabeledReductionInstance& inst, std::string* failure = nullptr) {
  const Graph& g = inst.graph;
  auto hub = inst.named.find("pad-hub");
  const Vertex pad_hub = hub == inst.named.end() ? -1 : hub->second;
  for (const auto& p : inst.paths) {
    const std::string in = "in:" + p.name;
    Vertex prev = -1, cur = p.from;
    std::int64_t steps = 0;
    bool ok = true;
    while (cur != p.to || steps == 0) {
      Vertex nxt = -1;
      for (Vertex y : g.neighbors(cur)) {
        if (y == prev || inst.labels.get(y) == "pad") continue;
        if ((y == p.to && (steps + 1 == p.length)) || (inst.labels.get(y) == in && y != p.to)) {
          if (y == p.to || nxt < 0) nxt = y;
        }
      }
      if (nxt < 0) {
        ok = false;
        break;
      }
      if (nxt != p.to && nxt != pad_hub && g.degree(nxt) != 2) {
        ok = false;
        break;
      }
      prev = cur;
      cur = nxt;
      ++steps;
      if (steps > p.length) {
        ok = false;
        break;
      }
    }
    if (!ok || steps != p.length) {
      if (failure) *failure = p.name;
      return false;
    }
  }
  return true;
}

}  // namespace deltatour
