#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. They share no code with the library beyond the Graph type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "graphon_lab/graph.hpp"
#include "graphon_lab/graphon.hpp"
#include "graphon_lab/rng.hpp"

namespace oracle {

using graphon_lab::Edge;
using graphon_lab::Graph;
using graphon_lab::Vertex;

/// Connectivity of g after deleting the vertices in removed_mask.
inline bool connected_after_removal(const Graph& g, std::uint32_t removed_mask) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  Vertex start = 0;
  std::size_t alive = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!(removed_mask >> v & 1)) {
      if (alive++ == 0) start = v;
    }
  }
  if (alive == 0) return false;
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if ((removed_mask >> w & 1) || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == alive;
}

/// kappa(g) >= k by deleting every vertex set of size < k. n <= 20.
inline bool kappa_at_least(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) >= k) continue;
    if (!connected_after_removal(g, mask)) return false;
  }
  return true;
}

struct Disconnection {
  bool micro = false;
  bool macro = false;
};

/// Enumerates every X with no edge to its complement. n <= 20.
inline Disconnection micro_macro(const Graph& g, double gamma) {
  const std::size_t n = g.order();
  Disconnection d;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool closed = true;
    for (Vertex v = 0; v < n && closed; ++v) {
      if (!(mask >> v & 1)) continue;
      for (Vertex w : g.neighbors(v)) {
        if (!(mask >> w & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    const double size = __builtin_popcount(mask);
    const double nn = static_cast<double>(n);
    if (size >= 1 && size <= gamma * nn) d.micro = true;
    if (size >= gamma * nn && size <= nn / 2) d.macro = true;
  }
  return d;
}

/// G(n, p) with independent pair decisions from rng.
inline Graph random_graph(graphon_lab::CounterRng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

/// Graph made of disjoint random blocks, to exercise disconnected cases.
inline Graph random_clustered_graph(graphon_lab::CounterRng& rng, std::size_t n) {
  std::vector<std::size_t> label(n);
  const std::size_t parts = 1 + rng.below(4);
  for (auto& l : label) l = rng.below(parts);
  const double p = 0.2 + 0.8 * rng.uniform();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (label[u] == label[v] && rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

/// Midpoint rule for the integral of f over [0,1] with m cells.
inline double midpoint(const std::function<double(double)>& f, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += f((static_cast<double>(i) + 0.5) / static_cast<double>(m));
  return s / static_cast<double>(m);
}

/// Fraction of the sorted degree sample that is at most alpha.
inline double empirical_gfun(const std::vector<double>& sorted_degrees, double alpha) {
  const auto it = std::upper_bound(sorted_degrees.begin(), sorted_degrees.end(), alpha);
  return static_cast<double>(it - sorted_degrees.begin()) /
         static_cast<double>(sorted_degrees.size());
}

}  // namespace oracle
