#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace graphon_lab {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Position of the pair {u, v} (u < v) in lexicographic order of all
/// C(n,2) pairs, and its inverse.
constexpr std::uint64_t pair_index(std::uint64_t n, std::uint64_t u, std::uint64_t v) noexcept {
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}
Edge pair_at(std::uint64_t n, std::uint64_t index) noexcept;

constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n * (n - 1) / 2; }

/// Simple undirected graph on [0, n): sorted neighbour lists plus a packed
/// pair-membership bitmap for O(1) adjacency queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or
  /// repeated pairs.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return adjacency_.size(); }
  std::size_t size() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adjacency_[v]; }
  std::size_t degree(Vertex v) const noexcept { return adjacency_[v].size(); }
  bool has_edge(Vertex a, Vertex b) const noexcept;

  /// All edges in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  friend class GraphBuilder;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint64_t> pair_bits_;
  std::size_t edge_count_ = 0;
};

/// Accumulates edges emitted in lexicographic pair order (the order in
/// which the samplers visit pairs), so neighbour lists come out sorted.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : graph_(n) {}
  void add_ordered(Vertex u, Vertex v);
  Graph finish() && { return std::move(graph_); }

 private:
  Graph graph_;
};

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x) noexcept;
  /// Returns true when x and y were in different sets.
  bool unite(std::size_t x, std::size_t y) noexcept;
  std::size_t components() const noexcept { return components_; }
  std::size_t set_size(std::size_t x) noexcept { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

}  // namespace graphon_lab
