#pragma once

// Deterministic statistics of simple graphs.
//
// Micro/macro-disconnection. A set X has no edges to V \ X exactly when X
// is a union of connected components: any component meeting both X and
// V \ X would contain an edge across. So for component sizes c_1..c_r:
//   micro  <=>  some nonempty union has size in [1, floor(gamma n)]
//          <=>  r >= 2 and min c_i <= floor(gamma n)
//   macro  <=>  some union has size in [ceil(gamma n), floor(n / 2)],
// the latter decided by a subset-sum table over the sizes in
// O(r * n) time. A union of all components has size n > n / 2, so a
// connected graph is neither.

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "graphon_lab/graph.hpp"

namespace graphon_lab {

struct GraphStats {
  std::size_t n = 0;
  std::size_t min_degree = 0;
  std::size_t isolated_count = 0;
  std::vector<std::size_t> component_sizes;  // descending
  std::optional<std::size_t> vertex_connectivity;
};

/// Degree statistics (min degree, isolated vertices) and component sizes.
GraphStats degree_stats(const Graph& g);

/// Component sizes, sorted descending.
std::vector<std::size_t> components(const Graph& g);

/// kappa(g) >= k. Requires g.order() > k.
bool vertex_connectivity_at_least(const Graph& g, std::size_t k);

/// Exact vertex connectivity (n - 1 for complete graphs).
std::size_t vertex_connectivity(const Graph& g);

struct Disconnection {
  bool micro = false;
  bool macro = false;
  friend bool operator==(const Disconnection&, const Disconnection&) = default;
};

Disconnection micro_macro_disconnected(const Graph& g, double gamma);
/// Same predicate from component sizes alone.
Disconnection micro_macro_from_sizes(const std::vector<std::size_t>& sizes, double gamma);

nlohmann::json to_json(const GraphStats& s);

}  // namespace graphon_lab
