#include "graphon_lab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace graphon_lab {

Edge pair_at(std::uint64_t n, std::uint64_t index) noexcept {
  // Row u starts at pair_index(n, u, u + 1). Guess u from the quadratic,
  // then correct for rounding.
  const double nd = static_cast<double>(n);
  const double disc = (2.0 * nd - 1.0) * (2.0 * nd - 1.0) - 8.0 * static_cast<double>(index);
  auto u = static_cast<std::uint64_t>(std::max(0.0, std::floor(((2.0 * nd - 1.0) - std::sqrt(std::max(0.0, disc))) / 2.0)));
  while (u > 0 && pair_index(n, u, u + 1) > index) --u;
  while (u + 2 < n && pair_index(n, u + 1, u + 2) <= index) ++u;
  const std::uint64_t v = index - pair_index(n, u, u + 1) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Graph::Graph(std::size_t n)
    : adjacency_(n), pair_bits_((pair_count(n) + 63) / 64, 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  for (Edge e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
    const auto idx = pair_index(n, e.u, e.v);
    auto& word = pair_bits_[idx / 64];
    const std::uint64_t bit = std::uint64_t{1} << (idx % 64);
    if (word & bit) {
      throw std::invalid_argument("repeated edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    word |= bit;
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
    ++edge_count_;
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(Vertex a, Vertex b) const noexcept {
  if (a == b) return false;
  if (a > b) std::swap(a, b);
  const auto idx = pair_index(order(), a, b);
  return (pair_bits_[idx / 64] >> (idx % 64)) & 1U;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (v > u) out.push_back({u, v});
    }
  }
  return out;
}

void GraphBuilder::add_ordered(Vertex u, Vertex v) {
  auto& g = graph_;
  const auto idx = pair_index(g.order(), u, v);
  g.pair_bits_[idx / 64] |= std::uint64_t{1} << (idx % 64);
  g.adjacency_[u].push_back(v);
  g.adjacency_[v].push_back(u);
  ++g.edge_count_;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) noexcept {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) noexcept {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --components_;
  return true;
}

}  // namespace graphon_lab
