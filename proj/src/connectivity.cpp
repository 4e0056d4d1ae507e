// Vertex connectivity decisions.
//
//   k = 1: a single component.
//   k = 2: connected and free of articulation points (iterative Tarjan).
//   k >= 3: neighbour pinning. Fix a vertex v of minimum degree. If S is a
//     minimum separator and v is not in S, some u outside N[v] is separated
//     from v; if v is in S, minimality gives v neighbours x, y in two
//     different components of G - S. Hence kappa(G) is the minimum local
//     connectivity over the pairs (v, u), u not in N[v], and over the
//     non-adjacent pairs inside N(v). Each local test is a unit-capacity
//     vertex-split max-flow stopped after k augmenting paths, skipped when
//     the pair already has k common neighbours.

#include <algorithm>
#include <limits>
#include <string>

#include "graphon_lab/analysis.hpp"
#include "graphon_lab/graphon.hpp"

namespace graphon_lab {

namespace {

bool has_articulation_point(const Graph& g) {
  const std::size_t n = g.order();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> disc(n, kUnset);
  std::vector<std::size_t> low(n, 0);
  std::vector<std::size_t> parent(n, kUnset);
  std::vector<std::size_t> next_edge(n, 0);
  std::size_t time = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != kUnset) continue;
    std::size_t root_children = 0;
    std::vector<Vertex> stack{root};
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      const auto nbrs = g.neighbors(v);
      if (next_edge[v] < nbrs.size()) {
        const Vertex w = nbrs[next_edge[v]++];
        if (disc[w] == kUnset) {
          parent[w] = v;
          disc[w] = low[w] = time++;
          if (v == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        if (parent[v] != kUnset) {
          const std::size_t p = parent[v];
          low[p] = std::min(low[p], low[v]);
          if (p != root && low[v] >= disc[p]) return true;
        }
      }
    }
    if (root_children > 1) return true;
  }
  return false;
}

// Residual network of the vertex-split graph: in(v) = 2v, out(v) = 2v + 1.
class SplitNetwork {
 public:
  explicit SplitNetwork(const Graph& g) : n_(g.order()) {
    const std::size_t nodes = 2 * n_;
    std::vector<std::size_t> count(nodes + 1, 0);
    for (Vertex v = 0; v < n_; ++v) {
      count[in(v)] += 1;   // in -> out
      count[out(v)] += 1;  // reverse
      count[out(v)] += g.degree(v);
      count[in(v)] += g.degree(v);
    }
    start_.assign(nodes + 1, 0);
    for (std::size_t i = 0; i < nodes; ++i) start_[i + 1] = start_[i] + count[i];
    to_.resize(start_[nodes]);
    cap_.resize(start_[nodes]);
    rev_.resize(start_[nodes]);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    auto add = [&](std::size_t a, std::size_t b) {
      const std::size_t ia = fill[a]++;
      const std::size_t ib = fill[b]++;
      to_[ia] = b;
      cap_[ia] = 1;
      rev_[ia] = ib;
      to_[ib] = a;
      cap_[ib] = 0;
      rev_[ib] = ia;
    };
    for (Vertex v = 0; v < n_; ++v) add(in(v), out(v));
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) add(out(v), in(w));
    }
    original_ = cap_;
    dirty_.assign(cap_.size(), 0);
    seen_.assign(nodes, 0);
    via_.assign(nodes, 0);
  }

  // At least k internally vertex-disjoint s-t paths (s, t non-adjacent).
  bool local_at_least(Vertex s, Vertex t, std::size_t k) {
    std::size_t paths = 0;
    while (paths < k && augment(out(s), in(t))) ++paths;
    for (std::size_t a : touched_) {
      cap_[a] = original_[a];
      dirty_[a] = 0;
    }
    touched_.clear();
    return paths >= k;
  }

 private:
  static std::size_t in(std::size_t v) { return 2 * v; }
  static std::size_t out(std::size_t v) { return 2 * v + 1; }

  bool augment(std::size_t source, std::size_t sink) {
    ++stamp_;
    if (stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      stamp_ = 1;
    }
    queue_.clear();
    queue_.push_back(source);
    seen_[source] = stamp_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::size_t a = queue_[head];
      for (std::size_t e = start_[a]; e < start_[a + 1]; ++e) {
        const std::size_t b = to_[e];
        if (cap_[e] > 0 && seen_[b] != stamp_) {
          seen_[b] = stamp_;
          via_[b] = e;
          if (b == sink) {
            for (std::size_t x = sink; x != source;) {
              const std::size_t arc = via_[x];
              mark(arc);
              mark(rev_[arc]);
              cap_[arc] -= 1;
              cap_[rev_[arc]] += 1;
              x = to_[rev_[arc]];
            }
            return true;
          }
          queue_.push_back(b);
        }
      }
    }
    return false;
  }

  void mark(std::size_t arc) {
    if (!dirty_[arc]) {
      dirty_[arc] = 1;
      touched_.push_back(arc);
    }
  }

  std::size_t n_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> to_;
  std::vector<signed char> cap_;
  std::vector<std::size_t> rev_;
  std::vector<signed char> original_;
  std::vector<char> dirty_;
  std::vector<std::size_t> touched_;
  std::vector<std::uint32_t> seen_;
  std::vector<std::size_t> via_;
  std::vector<std::size_t> queue_;
  std::uint32_t stamp_ = 0;
};

std::size_t common_neighbors(const Graph& g, Vertex a, Vertex b, std::size_t stop_at) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t common = 0;
  while (i < na.size() && j < nb.size() && common < stop_at) {
    if (na[i] < nb[j]) {
      ++i;
    } else if (nb[j] < na[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace

bool vertex_connectivity_at_least(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (n <= k) {
    throw DomainError("vertex_connectivity_at_least: need more than " + std::to_string(k) +
                      " vertices, got " + std::to_string(n));
  }
  if (k == 0) return true;

  Vertex pivot = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (g.degree(v) < g.degree(pivot)) pivot = v;
  }
  if (g.degree(pivot) < k) return false;
  if (components(g).size() != 1) return false;
  if (k == 1) return true;
  if (has_articulation_point(g)) return false;
  if (k == 2) return true;

  SplitNetwork net(g);
  auto local = [&](Vertex a, Vertex b) {
    if (common_neighbors(g, a, b, k) >= k) return true;
    return net.local_at_least(a, b, k);
  };
  for (Vertex u = 0; u < n; ++u) {
    if (u != pivot && !g.has_edge(pivot, u) && !local(pivot, u)) return false;
  }
  const auto nbrs = g.neighbors(pivot);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (!g.has_edge(nbrs[i], nbrs[j]) && !local(nbrs[i], nbrs[j])) return false;
    }
  }
  return true;
}

std::size_t vertex_connectivity(const Graph& g) {
  const std::size_t n = g.order();
  if (n <= 1) return 0;
  std::size_t k = 0;
  while (k + 1 < n && vertex_connectivity_at_least(g, k + 1)) ++k;
  return k;
}

}  // namespace graphon_lab
