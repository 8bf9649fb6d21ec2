#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stoqtim {

using Edge = std::pair<int, int>;  // always stored with first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Undirected simple graph. Edges are canonicalized (u < v), sorted and unique.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(int n, std::vector<Edge> edges = {},
                            std::vector<std::string> labels = {});

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int u) const;

  const std::vector<int>& neighbors(int u) const { return adj_[u]; }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;
  // Index of edge {u,v} in edges(), or -1.
  int edge_index(int u, int v) const;

  bool is_triangle_free() const;
  // Neighbourhood of u as a bitmask (n <= 64 only).
  std::uint64_t neighbor_mask(int u) const;

  friend bool operator==(const InteractionGraph& a, const InteractionGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> adj_;
};

// All-pairs BFS distances; unreachable pairs get a large sentinel.
class DistanceTable {
 public:
  static constexpr int unreachable = 1 << 29;
  explicit DistanceTable(const InteractionGraph& g);
  int operator()(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  int node_count() const { return n_; }

 private:
  int n_;
  std::vector<int> d_;
};

// Distance between two node sets: minimum over endpoints.
int set_distance(const DistanceTable& d, std::uint64_t a, std::uint64_t b);

}  // namespace stoqtim
