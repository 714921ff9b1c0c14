#pragma once

#include <atomic>
#include <bitset>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "deltatour/discretization.hpp"
#include "deltatour/normalize.hpp"

namespace deltatour {

inline Tour double_all_edges_tour(const Graph& g) {
  require_connected(g);
  if (g.m() == 0) return Tour{{Point::vertex(0)}};
  std::vector<std::pair<Vertex, Vertex>> multi;
  for (auto e : g.edges()) {
    multi.emplace_back(e.u, e.v);
    multi.emplace_back(e.u, e.v);
  }
  return vertex_tour(euler_circuit(g.n(), multi));
}

// Depth-first walk around a spanning tree.
inline Tour spanning_tour_upper_bound(const Graph& g, const Rational& delta) {
  if (delta < Rational(1, 2)) throw Error(ErrorCode::DeltaTooSmall, "spanning tour needs delta >= 1/2");
  require_connected(g);
  std::vector<Vertex> walk;
  std::vector<char> seen(g.n(), 0);
  std::function<void(Vertex)> dfs = [&](Vertex v) {
    seen[v] = 1;
    walk.push_back(v);
    for (Vertex y : g.neighbors(v))
      if (!seen[y]) {
        dfs(y);
        walk.push_back(v);
      }
  };
  dfs(0);
  if (walk.size() > 1) walk.pop_back();
  return vertex_tour(walk);
}

inline std::vector<Point> shortest_walk_between_points(const Graph& g, const Point& p, const Point& q) {
  validate_point(g, p);
  validate_point(g, q);
  if (p == q) return {p};
  Rational target = point_distance(g, p, q);
  EdgeId e = common_edge(g, p, q);
  if (e >= 0 && (*position_on(p, g.edge(e)) - *position_on(q, g.edge(e))).abs() == target) return {p, q};
  auto ends = [](const Point& a) {
    std::vector<std::pair<Vertex, Rational>> out;
    if (a.is_vertex()) {
      out.emplace_back(a.u, Rational(0));
    } else {
      out.emplace_back(a.u, a.lambda);
      out.emplace_back(a.v, Rational(1) - a.lambda);
    }
    return out;
  };
  for (auto [a, da] : ends(p))
    for (auto [b, db] : ends(q)) {
      if (da + Rational(g.dist(a, b)) + db != target) continue;
      std::vector<Point> w{p};
      for (Vertex x : g.shortest_path(a, b))
        if (w.back() != Point::vertex(x)) w.push_back(Point::vertex(x));
      if (w.back() != q) w.push_back(q);
      return w;
    }
  throw Error(ErrorCode::PointNotOnGraph, "no route found");
}

namespace detail {

constexpr int kMaxSolverVertices = 128;
using VSet = std::bitset<kMaxSolverVertices>;
using Units = std::int64_t;
constexpr Units kInf = std::numeric_limits<Units>::max() / 4;

struct IntPassed {
  EdgeId e;
  Units lo;
  Units hi;
};

// Exact search over nice tours with stops in P_δ(G) plus all tours with at
// most two stops. Lengths are integers in units of 1/L.
class ExactSearch {
 public:
  ExactSearch(const Graph& g, const Rational& delta) : g_(g), delta_(delta) {
    if (delta <= Rational(0)) throw Error(ErrorCode::DeltaOutOfRange, "delta must be positive");
    require_connected(g);
    if (g.n() > kMaxSolverVertices) throw Error(ErrorCode::TooLarge, "exact search supports at most 128 vertices");
    L_ = std::lcm<Units>(delta.den(), 2);
    dL_ = (delta * Rational(L_)).num();
    for (const auto& l : candidate_lambdas(delta))
      if (l > Rational(0) && l < Rational(1)) opts_.push_back((l * Rational(L_)).num());
    cpeek_ = 2 * dL_ >= L_ ? 0 : 2 * (L_ - 2 * dL_);
    n_ = g.n();
    D_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) D_[i * n_ + j] = g.dist(i, j);
    twin_rank_.assign(n_, -1);
    higher_twins_.assign(n_, {});
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (!g.adjacent(a, b) && g.degree(a) == g.degree(b) && g.degree(a) > 0 &&
            std::equal(g.neighbors(a).begin(), g.neighbors(a).end(), g.neighbors(b).begin())) {
          higher_twins_[a].push_back(b);
          if (twin_rank_[b] < 0) twin_rank_[b] = a;
        }
  }

  Units L() const { return L_; }
  Rational to_rational(Units u) const { return Rational(u, L_); }

  // cap: only tours with length <= cap (units) are of interest.
  // first_fit: stop at the first qualifying tour.
  std::optional<Tour> run(Units cap, bool first_fit, int threads) {
    if (n_ == 1) return Tour{{Point::vertex(0)}};
    best_ = kInf;
    cap_ = cap;
    best_tour_.reset();
    small_tours(first_fit);
    if (first_fit && best_tour_) return best_tour_;
    auto initial = [&] { return best_tour_ ? Limit{best_, false} : Limit{cap_, true}; };
    if (threads <= 1 || first_fit) {
      Memo memo;
      for (Vertex v = 0; v < n_ && !(first_fit && best_tour_); ++v) {
        RootResult r = search_root(v, memo, initial(), first_fit);
        if (r.cost < kInf) {
          best_ = r.cost;
          best_tour_ = build(r);
        }
      }
    } else {
      // roots are independent; pruning against other workers is strict so the
      // reduction below picks the same tour as the sequential order
      std::vector<RootResult> results(n_);
      const Limit start = initial();
      std::atomic<Units> shared(kInf);
      std::atomic<int> next(0);
      auto worker = [&] {
        Memo memo;
        for (int v; (v = next++) < n_;) {
          results[v] = search_root(v, memo, start, false, &shared);
          Units cur = shared.load();
          while (results[v].cost < cur && !shared.compare_exchange_weak(cur, results[v].cost)) {
          }
        }
      };
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      for (Vertex v = 0; v < n_; ++v) {
        Limit cur = initial();
        if (results[v].cost < kInf && cur.accepts(results[v].cost)) {
          best_ = results[v].cost;
          best_tour_ = build(results[v]);
        }
      }
    }
    return best_tour_;
  }

  Units best_units() const { return best_; }

  // Shortest tour with at most two stops and length <= cap, if any.
  std::optional<Tour> two_stop_tours(Units cap) {
    best_ = kInf;
    cap_ = cap;
    best_tour_.reset();
    if (n_ == 1) return Tour{{Point::vertex(0)}};
    small_tours(false);
    return best_tour_;
  }

 private:
  struct OuterResult {
    Units cost = kInf;
    std::vector<std::pair<EdgeId, Units>> peeks;  // boundary edge, depth from the W side
  };
  using Memo = std::unordered_map<VSet, OuterResult>;

  struct RootResult {
    Units cost = kInf;
    VSet W;
    std::vector<EdgeId> F1;
    std::vector<std::pair<EdgeId, Units>> outer_peeks;
  };

  const Graph& g_;
  Rational delta_;
  Units L_ = 2, dL_ = 0, cpeek_ = 0;
  int n_ = 0;
  std::vector<Units> opts_;
  std::vector<int> D_;
  std::vector<int> twin_rank_;
  std::vector<std::vector<int>> higher_twins_;
  Units best_ = kInf, cap_ = kInf;
  std::optional<Tour> best_tour_;

  int d(int a, int b) const { return D_[a * n_ + b]; }

  bool better(Units c) const { return best_tour_ ? c < best_ : c <= cap_; }

  // ---------- tours with at most two stops ----------
  bool covers(const std::vector<IntPassed>& passed) const {
    std::vector<Units> a(n_, kInf);
    for (int x = 0; x < n_; ++x)
      for (const auto& s : passed) {
        const Edge& f = g_.edge(s.e);
        a[x] = std::min({a[x], d(x, f.u) * L_ + s.lo, d(x, f.v) * L_ + L_ - s.hi});
      }
    for (EdgeId e = 0; e < g_.m(); ++e) {
      const Edge& ed = g_.edge(e);
      std::vector<std::pair<Units, Units>> iv;
      for (const auto& s : passed)
        if (s.e == e) iv.emplace_back(s.lo - dL_, s.hi + dL_);
      Units ru = dL_ - a[ed.u], rv = dL_ - a[ed.v];
      if (ru >= 0) iv.emplace_back(0, ru);
      if (rv >= 0) iv.emplace_back(L_ - rv, L_);
      std::sort(iv.begin(), iv.end());
      Units reach = 0;
      bool started = false;
      for (auto [lo, hi] : iv) {
        if (lo > reach) break;
        if (lo <= 0 || started) {
          started = true;
          reach = std::max(reach, hi);
        }
      }
      if (!started || reach < L_) return false;
    }
    return true;
  }

  void small_tours(bool first_fit) {
    // single stops, then pairs on one edge, in point order
    std::vector<Units> pos{0};
    for (Units o : opts_) pos.push_back(o);
    pos.push_back(L_);
    auto point_at = [&](EdgeId e, Units x) {
      return make_point(g_, g_.edge(e).u, g_.edge(e).v, to_rational(x));
    };
    std::vector<std::pair<Point, IntPassed>> singles;
    for (EdgeId e = 0; e < g_.m(); ++e)
      for (Units x : pos) {
        Point p = point_at(e, x);
        if (std::any_of(singles.begin(), singles.end(), [&](auto& s) { return s.first == p; })) continue;
        singles.push_back({p, IntPassed{e, x, x}});
      }
    std::sort(singles.begin(), singles.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [p, ps] : singles)
      if (better(0) && covers({ps})) {
        best_ = 0;
        best_tour_ = Tour{{p}};
        return;
      }
    struct Pair {
      Units len;
      Point p, q;
      IntPassed s;
    };
    std::vector<Pair> pairs;
    for (EdgeId e = 0; e < g_.m(); ++e)
      for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
          Point p = point_at(e, pos[i]), q = point_at(e, pos[j]);
          if (q < p) std::swap(p, q);
          pairs.push_back({2 * (pos[j] - pos[i]), p, q, IntPassed{e, pos[i], pos[j]}});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.len != b.len) return a.len < b.len;
      if (a.p != b.p) return a.p < b.p;
      return a.q < b.q;
    });
    for (auto& pr : pairs) {
      if (!better(pr.len)) break;
      if (covers({pr.s})) {
        best_ = pr.len;
        best_tour_ = Tour{{pr.p, pr.q}};
        if (first_fit) return;
        break;
      }
    }
  }

  // ---------- nice tours around a connected stop set W ----------
  Units lower_bound(int wsize, int ew) const {
    Units lb = wsize >= 3 ? wsize * L_ : (wsize == 2 ? 2 * L_ : 0);
    return std::max(lb, std::min(L_, cpeek_) * ew);
  }

  struct Inner {
    Units cost = kInf;
    std::vector<EdgeId> F1;
  };

  Inner inner_cost(const std::vector<int>& wl, const VSet& W) const {
    std::vector<EdgeId> ew;
    for (int x : wl)
      for (int i = 0; i < static_cast<int>(g_.degree(x)); ++i) {
        int y = g_.neighbors(x)[i];
        if (y > x && W[y]) ew.push_back(g_.incident_edges(x)[i]);
      }
    Inner res;
    if (wl.size() == 1) {
      res.cost = 0;
      return res;
    }
    const int me = static_cast<int>(ew.size());
    // spanning tree of G[W] and fundamental cycles
    std::vector<int> local(n_, -1);
    for (int i = 0; i < static_cast<int>(wl.size()); ++i) local[wl[i]] = i;
    std::vector<int> par(wl.size());
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    std::vector<char> tree(me, 0);
    for (int i = 0; i < me; ++i) {
      int a = find(local[g_.edge(ew[i]).u]), b = find(local[g_.edge(ew[i]).v]);
      if (a != b) {
        par[a] = b;
        tree[i] = 1;
      }
    }
    // tree adjacency to extract fundamental cycles
    std::vector<std::vector<std::pair<int, int>>> tadj(wl.size());
    for (int i = 0; i < me; ++i)
      if (tree[i]) {
        int a = local[g_.edge(ew[i]).u], b = local[g_.edge(ew[i]).v];
        tadj[a].emplace_back(b, i);
        tadj[b].emplace_back(a, i);
      }
    std::vector<int> parent(wl.size(), -1), pedge(wl.size(), -1), depth(wl.size(), 0);
    {
      std::vector<int> st{0};
      std::vector<char> vis(wl.size(), 0);
      vis[0] = 1;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (auto [y, ei] : tadj[x])
          if (!vis[y]) {
            vis[y] = 1;
            parent[y] = x;
            pedge[y] = ei;
            depth[y] = depth[x] + 1;
            st.push_back(y);
          }
      }
    }
    using EMask = std::bitset<512>;
    if (me > 512) throw Error(ErrorCode::TooLarge, "too many edges inside the stop set");
    std::vector<EMask> basis;
    for (int i = 0; i < me; ++i) {
      if (tree[i]) continue;
      EMask m;
      m.set(i);
      int a = local[g_.edge(ew[i]).u], b = local[g_.edge(ew[i]).v];
      while (a != b) {
        if (depth[a] < depth[b]) std::swap(a, b);
        m.flip(pedge[a]);
        a = parent[a];
      }
      basis.push_back(m);
    }
    if (basis.size() > 24) throw Error(ErrorCode::TooLarge, "cycle space too large for exhaustive search");
    const int ws = static_cast<int>(wl.size());
    EMask cur;
    std::vector<int> p2(ws);
    const std::uint64_t total = std::uint64_t(1) << basis.size();
    for (std::uint64_t k = 0; k < total; ++k) {
      if (k > 0) cur ^= basis[std::countr_zero(k)];  // Gray code step
      int f1 = static_cast<int>(cur.count());
      std::iota(p2.begin(), p2.end(), 0);
      std::function<int(int)> f2 = [&](int x) { return p2[x] == x ? x : p2[x] = f2(p2[x]); };
      int comps = ws;
      for (int i = 0; i < me; ++i)
        if (cur[i]) {
          int a = f2(local[g_.edge(ew[i]).u]), b = f2(local[g_.edge(ew[i]).v]);
          if (a != b) {
            p2[a] = b;
            --comps;
          }
        }
      Units c = f1 * L_ + 2 * (comps - 1) * L_ + cpeek_ * (me - f1 - (comps - 1));
      if (c < res.cost) {
        res.cost = c;
        res.F1.clear();
        for (int i = 0; i < me; ++i)
          if (cur[i]) res.F1.push_back(ew[i]);
      }
    }
    return res;
  }

  OuterResult outer_cost(const VSet& C, const VSet& W) const {
    std::vector<int> cl;
    for (int x = 0; x < n_; ++x)
      if (C[x]) cl.push_back(x);
    std::vector<int> local(n_, -1);
    for (int i = 0; i < static_cast<int>(cl.size()); ++i) local[cl[i]] = i;
    const int cs = static_cast<int>(cl.size());
    struct B {
      EdgeId e;
      int y;  // local index of the endpoint in C
    };
    std::vector<B> bnd;
    std::vector<std::pair<int, int>> inner;
    for (int x : cl)
      for (int i = 0; i < static_cast<int>(g_.degree(x)); ++i) {
        int y = g_.neighbors(x)[i];
        if (W[y]) bnd.push_back({g_.incident_edges(x)[i], local[x]});
        else if (y > x) inner.emplace_back(local[x], local[y]);
      }
    std::sort(bnd.begin(), bnd.end(), [](const B& a, const B& b) { return a.e < b.e; });
    // distances inside G[C]
    std::vector<std::vector<int>> dc(cs, std::vector<int>(cs, 1 << 20));
    for (int s = 0; s < cs; ++s) {
      std::vector<int> q{s};
      dc[s][s] = 0;
      for (std::size_t h = 0; h < q.size(); ++h) {
        int x = q[h];
        for (int y : g_.neighbors(cl[x]))
          if (local[y] >= 0 && C[y] && dc[s][local[y]] > dc[s][x] + 1) {
            dc[s][local[y]] = dc[s][x] + 1;
            q.push_back(local[y]);
          }
      }
    }
    const int nb = static_cast<int>(bnd.size());
    const Units maxo = opts_.empty() ? 0 : opts_.back();
    std::vector<Units> depth(nb, 0);
    auto feasible = [&](int fixed) {
      // edges with index >= fixed are relaxed to the deepest option
      std::vector<Units> a(cs, kInf);
      for (int b = 0; b < nb; ++b) {
        Units lam = b < fixed ? depth[b] : maxo;
        for (int x = 0; x < cs; ++x) a[x] = std::min(a[x], (L_ - lam) + dc[bnd[b].y][x] * L_);
      }
      for (auto [x, y] : inner)
        if (a[x] + a[y] + L_ > 2 * dL_) return false;
      for (int b = 0; b < nb; ++b) {
        Units lam = b < fixed ? depth[b] : maxo;
        if ((L_ - lam) + a[bnd[b].y] > 2 * dL_) return false;
      }
      return true;
    };
    OuterResult res;
    if (!feasible(0)) return res;
    std::vector<Units> choice{0};
    for (Units o : opts_) choice.push_back(o);
    std::function<void(int, Units)> rec = [&](int i, Units cost) {
      if (cost >= res.cost) return;
      if (i == nb) {
        res.cost = cost;
        res.peeks.clear();
        for (int b = 0; b < nb; ++b)
          if (depth[b] > 0) res.peeks.emplace_back(bnd[b].e, depth[b]);
        return;
      }
      for (Units o : choice) {
        depth[i] = o;
        if (cost + 2 * o >= res.cost) break;
        if (!feasible(i + 1)) continue;
        rec(i + 1, cost + 2 * o);
      }
      depth[i] = 0;
    };
    rec(0, 0);
    return res;
  }

  struct Limit {
    Units value;
    bool inclusive;
    bool accepts(Units c) const { return inclusive ? c <= value : c < value; }
  };

  RootResult search_root(Vertex root, Memo& memo, Limit limit, bool first_fit,
                         std::atomic<Units>* shared = nullptr) const {
    RootResult best;
    if (twin_rank_[root] >= 0) return best;
    auto prune = [&](Units lb) {
      if (!limit.accepts(lb)) return true;
      return shared != nullptr && lb > shared->load();
    };
    auto accept = [&](Units c) { return limit.accepts(c); };
    bool stop = false;
    VSet W;
    std::vector<int> wl;
    std::function<void(VSet, std::vector<int>)> extend = [&](VSet ext, std::vector<int> extl) {
      if (stop) return;
      int ew = 0;
      for (int x : wl)
        for (int y : g_.neighbors(x))
          if (y > x && W[y]) ++ew;
      if (prune(lower_bound(static_cast<int>(wl.size()), ew))) return;
      if (evaluate(W, wl, memo, best, accept)) {
        limit = Limit{best.cost, false};
        if (first_fit) {
          stop = true;
          return;
        }
      }
      VSet nbW;
      for (int x : wl)
        for (int y : g_.neighbors(x)) nbW.set(y);
      while (!extl.empty()) {
        int w = extl.front();
        extl.erase(extl.begin());
        ext.reset(w);
        VSet ext2 = ext;
        std::vector<int> extl2 = extl;
        for (int u : g_.neighbors(w))
          if (u > root && !W[u] && !nbW[u] && !ext2[u]) {
            ext2.set(u);
            extl2.push_back(u);
          }
        std::sort(extl2.begin(), extl2.end());
        W.set(w);
        wl.push_back(w);
        extend(ext2, extl2);
        W.reset(w);
        wl.pop_back();
        if (stop) return;
        // a set holding a higher false twin of w but not w is a relabelled copy
        for (int t : higher_twins_[w])
          if (ext[t]) {
            ext.reset(t);
            extl.erase(std::find(extl.begin(), extl.end(), t));
          }
      }
    };
    W.set(root);
    wl.push_back(root);
    VSet ext;
    std::vector<int> extl;
    for (int u : g_.neighbors(root))
      if (u > root) {
        ext.set(u);
        extl.push_back(u);
      }
    extend(ext, extl);
    return best;
  }

  template <class Accept>
  bool evaluate(const VSet& W, const std::vector<int>& wl, Memo& memo, RootResult& best, Accept accept) const {
    std::vector<int> sorted = wl;
    std::sort(sorted.begin(), sorted.end());
    Inner in = inner_cost(sorted, W);
    if (!accept(in.cost)) return false;
    Units total = in.cost;
    std::vector<std::pair<EdgeId, Units>> peeks;
    VSet seen = W;
    for (int s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      VSet C;
      std::vector<int> q{s};
      C.set(s);
      seen.set(s);
      for (std::size_t h = 0; h < q.size(); ++h)
        for (int y : g_.neighbors(q[h]))
          if (!seen[y]) {
            seen.set(y);
            C.set(y);
            q.push_back(y);
          }
      auto it = memo.find(C);
      if (it == memo.end()) it = memo.emplace(C, outer_cost(C, W)).first;
      if (it->second.cost >= kInf) return false;
      total += it->second.cost;
      if (!accept(total)) return false;
      peeks.insert(peeks.end(), it->second.peeks.begin(), it->second.peeks.end());
    }
    best.cost = total;
    best.W = W;
    best.F1 = in.F1;
    best.outer_peeks = peeks;
    return true;
  }

  Tour build(const RootResult& r) const {
    std::vector<int> wl;
    for (int x = 0; x < n_; ++x)
      if (r.W[x]) wl.push_back(x);
    std::vector<char> inF1(g_.m(), 0);
    for (EdgeId e : r.F1) inF1[e] = 1;
    std::vector<int> par(n_);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    for (EdgeId e : r.F1) par[find(g_.edge(e).u)] = find(g_.edge(e).v);
    std::vector<std::pair<Vertex, Vertex>> multi;
    std::vector<Peek> peeks;
    for (EdgeId e = 0; e < g_.m(); ++e) {
      const Edge& ed = g_.edge(e);
      if (!r.W[ed.u] || !r.W[ed.v]) continue;
      if (inF1[e]) {
        multi.emplace_back(ed.u, ed.v);
      } else if (find(ed.u) != find(ed.v)) {
        par[find(ed.u)] = find(ed.v);
        multi.emplace_back(ed.u, ed.v);
        multi.emplace_back(ed.u, ed.v);
      } else if (cpeek_ > 0) {
        peeks.push_back({ed.u, e, Rational(1) - Rational(2) * delta_});
      }
    }
    for (auto [e, dep] : r.outer_peeks) {
      const Edge& ed = g_.edge(e);
      peeks.push_back({r.W[ed.u] ? ed.u : ed.v, e, to_rational(dep)});
    }
    std::vector<Vertex> circuit = multi.empty() ? std::vector<Vertex>{wl[0]} : euler_circuit(n_, multi);
    return assemble(g_, circuit, peeks);
  }
};

inline void check_solution(const Graph& g, const Rational& delta, const Tour& t) {
  if (!is_delta_tour(g, t, delta).covered) throw std::logic_error("solver produced a non-covering tour");
  Rational len = tour_length(g, t);
  Rational s = step_width(delta);
  if (discrete_length(t) > (len / s).ceil()) throw std::logic_error("tour has more stops than its length allows");
}

}  // namespace detail

struct SolverOptions {
  int threads = 1;
};

inline Tour brute_force_shortest(const Graph& g, const Rational& delta, SolverOptions opt = {}) {
  detail::ExactSearch s(g, delta);
  Rational cap = Rational(2 * g.m());
  if (delta >= Rational(1, 2)) cap = min(cap, Rational(2 * g.n() - 2));
  auto t = s.run((cap * Rational(s.L())).floor(), false, opt.threads);
  if (!t) throw std::logic_error("no tour within the universal upper bound");
  detail::check_solution(g, delta, *t);
  return *t;
}

inline std::optional<Tour> brute_force_decide(const Graph& g, const Rational& delta, const Rational& K) {
  detail::ExactSearch s(g, delta);
  if (K < Rational(0)) return std::nullopt;
  auto t = s.run((K * Rational(s.L())).floor(), true, 1);
  if (t) detail::check_solution(g, delta, *t);
  return t;
}

// Literal enumeration of closed candidate-point sequences, for tiny graphs.
inline std::optional<Tour> exhaustive_sequence_shortest(const Graph& g, const Rational& delta, int max_stops) {
  require_connected(g);
  auto pts = candidate_points(g, delta);
  const int np = static_cast<int>(pts.size());
  std::vector<std::vector<int>> nxt(np);
  std::vector<std::vector<Rational>> dist(np, std::vector<Rational>(np));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      dist[i][j] = point_distance(g, pts[i], pts[j]);
      if (i != j && common_edge(g, pts[i], pts[j]) >= 0) nxt[i].push_back(j);
    }
  std::optional<Tour> best;
  Rational best_len;
  std::vector<int> seq;
  std::function<void(Rational)> rec = [&](Rational len) {
    int last = seq.back();
    Rational closing = seq.size() == 1 ? Rational(0) : dist[last][seq[0]];
    if (best && len + closing >= best_len) return;
    bool closes = seq.size() == 1 || (last != seq[0] && common_edge(g, pts[last], pts[seq[0]]) >= 0);
    if (closes) {
      Tour t;
      for (int i : seq) t.stops.push_back(pts[i]);
      if (is_delta_tour(g, t, delta).covered) {
        best = t;
        best_len = tour_length(g, t);
      }
    }
    if (static_cast<int>(seq.size()) >= max_stops) return;
    for (int j : nxt[last]) {
      if (j < seq[0]) continue;  // rotation: first stop is the smallest
      Rational step = (*position_on(pts[last], g.edge(common_edge(g, pts[last], pts[j]))) -
                       *position_on(pts[j], g.edge(common_edge(g, pts[last], pts[j]))))
                          .abs();
      seq.push_back(j);
      rec(len + step);
      seq.pop_back();
    }
  };
  for (int i = 0; i < np; ++i) {
    seq = {i};
    rec(Rational(0));
  }
  return best;
}

struct XpOptions {
  bool force_enumeration = false;
  int max_sequence = -1;  // overrides 12k when positive
};

inline Tour xp_large_delta_shortest(const Graph& g, const Rational& delta, XpOptions opt = {}) {
  require_connected(g);
  if (delta <= Rational(0)) throw Error(ErrorCode::DeltaOutOfRange, "delta must be positive");
  std::int64_t k = (Rational(g.n()) / delta).ceil();
  std::int64_t qmax = opt.max_sequence > 0 ? opt.max_sequence : 12 * k;
  if (!opt.force_enumeration && g.n() < 12 * k) return brute_force_shortest(g, delta);
  Tour best = delta >= Rational(1, 2) ? spanning_tour_upper_bound(g, delta) : double_all_edges_tour(g);
  Rational best_len = tour_length(g, best);
  auto pts = candidate_points(g, delta);
  const int np = static_cast<int>(pts.size());
  std::vector<std::vector<Rational>> dist(np, std::vector<Rational>(np));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) dist[i][j] = point_distance(g, pts[i], pts[j]);
  std::vector<int> seq;
  std::vector<char> used(np, 0);
  auto concat = [&]() {
    std::vector<Point> stops;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto w = shortest_walk_between_points(g, pts[seq[i]], pts[seq[(i + 1) % seq.size()]]);
      for (const auto& p : w)
        if (stops.empty() || stops.back() != p) stops.push_back(p);
    }
    if (stops.size() > 1 && stops.back() == stops.front()) stops.pop_back();
    return Tour{stops};
  };
  std::function<void(Rational)> rec = [&](Rational len) {
    Rational closing = dist[seq.back()][seq[0]];
    if (len + closing >= best_len) return;
    Tour t = concat();
    if (is_delta_tour(g, t, delta).covered) {
      Rational l = tour_length(g, t);
      if (l < best_len) {
        best = t;
        best_len = l;
      }
    }
    if (static_cast<std::int64_t>(seq.size()) >= qmax) return;
    for (int j = seq[0] + 1; j < np; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      seq.push_back(j);
      rec(len + dist[seq[seq.size() - 2]][j]);
      seq.pop_back();
      used[j] = 0;
    }
  };
  for (int i = 0; i < np; ++i) {
    seq = {i};
    used[i] = 1;
    rec(Rational(0));
    used[i] = 0;
  }
  return best;
}

}  // namespace deltatour
