#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "deltatour/error.hpp"

namespace deltatour {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph. Edges are kept sorted with u < v and numbered in
// that order; adjacency is stored compressed. Distances are filled on first use.
class Graph {
 public:
  Graph() : cache_(std::make_shared<Cache>()) {}

  // n may exceed the largest endpoint (isolated vertices); pass -1 to infer.
  static Graph build(const std::vector<std::pair<Vertex, Vertex>>& pairs, int n = -1) {
    Graph g;
    int maxv = -1;
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0) throw Error(ErrorCode::DanglingVertexId, "negative vertex id");
      maxv = std::max({maxv, a, b});
    }
    if (n < 0) n = maxv + 1;
    if (maxv >= n) throw Error(ErrorCode::DanglingVertexId, "vertex id " + std::to_string(maxv) + " >= n");
    g.n_ = n;
    g.edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a == b) throw Error(ErrorCode::LoopEdge, "loop at " + std::to_string(a));
      g.edges_.push_back(make_edge(a, b));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    for (std::size_t i = 1; i < g.edges_.size(); ++i)
      if (g.edges_[i] == g.edges_[i - 1])
        throw Error(ErrorCode::ParallelEdge, "duplicate edge " + std::to_string(g.edges_[i].u) + " " +
                                                 std::to_string(g.edges_[i].v));
    g.offsets_.assign(n + 1, 0);
    for (auto e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (int i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.nbr_.resize(2 * g.edges_.size());
    g.nbr_edge_.resize(2 * g.edges_.size());
    std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // edges are sorted, so each list comes out sorted by neighbor for the u side;
    // sort explicitly to cover the v side too
    for (EdgeId id = 0; id < static_cast<EdgeId>(g.edges_.size()); ++id) {
      auto e = g.edges_[id];
      g.nbr_[fill[e.u]] = e.v;
      g.nbr_edge_[fill[e.u]++] = id;
      g.nbr_[fill[e.v]] = e.u;
      g.nbr_edge_[fill[e.v]++] = id;
    }
    for (int v = 0; v < n; ++v) {
      int b = g.offsets_[v], en = g.offsets_[v + 1];
      std::vector<std::pair<int, int>> tmp;
      tmp.reserve(en - b);
      for (int i = b; i < en; ++i) tmp.emplace_back(g.nbr_[i], g.nbr_edge_[i]);
      std::sort(tmp.begin(), tmp.end());
      for (int i = b; i < en; ++i) {
        g.nbr_[i] = tmp[i - b].first;
        g.nbr_edge_[i] = tmp[i - b].second;
      }
    }
    return g;
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  struct Range {
    const int* b;
    const int* e;
    const int* begin() const { return b; }
    const int* end() const { return e; }
    std::size_t size() const { return static_cast<std::size_t>(e - b); }
    int operator[](std::size_t i) const { return b[i]; }
  };
  Range neighbors(Vertex v) const { return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]}; }
  Range incident_edges(Vertex v) const {
    return {nbr_edge_.data() + offsets_[v], nbr_edge_.data() + offsets_[v + 1]};
  }

  // -1 when a and b are not adjacent
  EdgeId edge_id(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
    auto r = neighbors(a);
    auto it = std::lower_bound(r.begin(), r.end(), b);
    if (it == r.end() || *it != b) return -1;
    return nbr_edge_[offsets_[a] + (it - r.begin())];
  }
  bool adjacent(Vertex a, Vertex b) const { return edge_id(a, b) >= 0; }

  bool is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : neighbors(x))
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    return count == n_;
  }

  // Floyd–Warshall, computed once per graph value and shared by copies.
  const std::vector<int>& distance_matrix() const {
    std::call_once(cache_->once, [this] {
      if (!is_connected()) {
        cache_->failed = true;
        return;
      }
      constexpr int inf = 1 << 29;
      std::vector<int> d(static_cast<std::size_t>(n_) * n_, inf);
      for (int i = 0; i < n_; ++i) d[static_cast<std::size_t>(i) * n_ + i] = 0;
      for (auto e : edges_) {
        d[static_cast<std::size_t>(e.u) * n_ + e.v] = 1;
        d[static_cast<std::size_t>(e.v) * n_ + e.u] = 1;
      }
      for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i) {
          int dik = d[static_cast<std::size_t>(i) * n_ + k];
          if (dik >= inf) continue;
          int* row = &d[static_cast<std::size_t>(i) * n_];
          const int* krow = &d[static_cast<std::size_t>(k) * n_];
          for (int j = 0; j < n_; ++j)
            if (dik + krow[j] < row[j]) row[j] = dik + krow[j];
        }
      cache_->dist = std::move(d);
    });
    if (cache_->failed) throw Error(ErrorCode::Disconnected, "graph is not connected");
    return cache_->dist;
  }
  int dist(Vertex a, Vertex b) const { return distance_matrix()[static_cast<std::size_t>(a) * n_ + b]; }

  std::vector<std::vector<int>> all_pairs_distances() const {
    const auto& d = distance_matrix();
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i][j] = d[static_cast<std::size_t>(i) * n_ + j];
    return out;
  }

  // One shortest vertex path a..b (inclusive), smallest-id next hop first.
  std::vector<Vertex> shortest_path(Vertex a, Vertex b) const {
    std::vector<Vertex> p{a};
    while (a != b) {
      for (int y : neighbors(a))
        if (dist(y, b) == dist(a, b) - 1) {
          a = y;
          break;
        }
      p.push_back(a);
    }
    return p;
  }

  Graph induced(const std::vector<Vertex>& keep) const {
    std::vector<int> idx(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) idx[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto e : edges_)
      if (idx[e.u] >= 0 && idx[e.v] >= 0) pairs.emplace_back(idx[e.u], idx[e.v]);
    return build(pairs, static_cast<int>(keep.size()));
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<int> dist;
    bool failed = false;
  };
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<int> nbr_;
  std::vector<int> nbr_edge_;
  std::shared_ptr<Cache> cache_;
};

inline Graph build_graph(const std::vector<std::pair<Vertex, Vertex>>& pairs, int n = -1) {
  return Graph::build(pairs, n);
}
inline bool is_connected(const Graph& g) { return g.is_connected(); }
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) { return g.all_pairs_distances(); }

inline void require_connected(const Graph& g) {
  if (!g.is_connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

}  // namespace deltatour
