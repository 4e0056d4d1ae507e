#include "graphon_lab/analysis.hpp"

#include <algorithm>
#include <functional>

#include "graphon_lab/graphon.hpp"

namespace graphon_lab {

std::vector<std::size_t> components(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::size_t> sizes;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.push_back(root);
    std::size_t size = 0;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

GraphStats degree_stats(const Graph& g) {
  GraphStats s;
  s.n = g.order();
  if (s.n == 0) return s;
  s.min_degree = g.degree(0);
  for (Vertex v = 0; v < s.n; ++v) {
    const std::size_t d = g.degree(v);
    s.min_degree = std::min(s.min_degree, d);
    if (d == 0) ++s.isolated_count;
  }
  s.component_sizes = components(g);
  return s;
}

Disconnection micro_macro_from_sizes(const std::vector<std::size_t>& sizes, double gamma) {
  if (!(gamma > 0.0 && gamma <= 0.5)) throw DomainError("gamma must lie in (0, 1/2]");
  Disconnection out;
  if (sizes.size() < 2) return out;
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  const double limit = gamma * static_cast<double>(n);

  const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
  out.micro = static_cast<double>(smallest) <= limit;

  // reachable[s]: some union of components has exactly s vertices. Only
  // sums up to n/2 matter.
  const std::size_t half = n / 2;
  std::vector<char> reachable(half + 1, 0);
  reachable[0] = 1;
  for (std::size_t c : sizes) {
    if (c > half) continue;
    for (std::size_t s = half; s >= c; --s) {
      if (reachable[s - c]) reachable[s] = 1;
      if (s == c) break;
    }
  }
  for (std::size_t s = 1; s <= half; ++s) {
    if (reachable[s] && static_cast<double>(s) >= limit) {
      out.macro = true;
      break;
    }
  }
  return out;
}

Disconnection micro_macro_disconnected(const Graph& g, double gamma) {
  return micro_macro_from_sizes(components(g), gamma);
}

nlohmann::json to_json(const GraphStats& s) {
  nlohmann::json out;
  out["n"] = s.n;
  out["minDegree"] = s.min_degree;
  out["isolatedCount"] = s.isolated_count;
  out["componentCount"] = s.component_sizes.size();
  out["componentSizes"] = s.component_sizes;
  if (s.vertex_connectivity) {
    out["vertexConnectivity"] = *s.vertex_connectivity;
  } else {
    out["vertexConnectivity"] = nullptr;
  }
  return out;
}

}  // namespace graphon_lab
