#include "stoqtim/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "stoqtim/error.hpp"

namespace stoqtim {

InteractionGraph::InteractionGraph(int n, std::vector<Edge> edges,
                                   std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n < 0) fail(ErrorKind::validation, "graph: negative node count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    fail(ErrorKind::validation, "graph: label count does not match node count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(ErrorKind::validation, "graph: edge endpoint out of range");
    if (u == v) fail(ErrorKind::validation, "graph: self-loop on node " + std::to_string(u));
    edges_.push_back(make_edge(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adj_.assign(n, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::string InteractionGraph::label(int u) const {
  return labels_.empty() ? std::to_string(u) : labels_[u];
}

int InteractionGraph::max_degree() const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d = std::max(d, degree(u));
  return d;
}

bool InteractionGraph::has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

int InteractionGraph::edge_index(int u, int v) const {
  if (u == v) return -1;
  Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool InteractionGraph::is_triangle_free() const {
  for (auto [u, v] : edges_) {
    const auto& a = adj_[u];
    const auto& b = adj_[v];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return false;
      if (a[i] < b[j]) ++i; else ++j;
    }
  }
  return true;
}

std::uint64_t InteractionGraph::neighbor_mask(int u) const {
  std::uint64_t m = 0;
  for (int v : adj_[u]) m |= std::uint64_t{1} << v;
  return m;
}

DistanceTable::DistanceTable(const InteractionGraph& g) : n_(g.node_count()) {
  if (n_ > 4096) fail(ErrorKind::size_limit, "distance table: more than 4096 nodes");
  d_.assign(static_cast<std::size_t>(n_) * n_, unreachable);
  std::deque<int> q;
  for (int s = 0; s < n_; ++s) {
    int* row = d_.data() + static_cast<std::size_t>(s) * n_;
    row[s] = 0;
    q.push_back(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u))
        if (row[v] == unreachable) {
          row[v] = row[u] + 1;
          q.push_back(v);
        }
    }
  }
}

int set_distance(const DistanceTable& d, std::uint64_t a, std::uint64_t b) {
  int best = DistanceTable::unreachable;
  for (std::uint64_t x = a; x; x &= x - 1)
    for (std::uint64_t y = b; y; y &= y - 1)
      best = std::min(best, d(std::countr_zero(x), std::countr_zero(y)));
  return best;
}

}  // namespace stoqtim
