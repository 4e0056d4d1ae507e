#pragma once

// W-edge-incremental process. Latents are drawn once; afterwards each step
// adds one pair, chosen among the visible pairs (positive W-value, not yet
// an edge) with probability proportional to its W-value. Once no visible
// pair remains the process either adds a uniformly random non-edge or,
// in Stall mode, stops growing.
//
// Step t (1-based) uses the substream (seed, Incremental, t). Hitting times
// are edge counts: hit_min_degree[K-1] is the first t with delta(G^t) >= K
// and hit_connectivity[K-1] the first t with kappa(G^t) >= K.
// visible_exhausted_at is the edge count at which no visible pair is left
// while invisible pairs remain; it stays empty when the two coincide.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "graphon_lab/graph.hpp"
#include "graphon_lab/graphon.hpp"
#include "graphon_lab/sampler.hpp"

namespace graphon_lab {

enum class ExhaustedMode { UniformNonEdge, Stall };

struct IncrementalOptions {
  std::size_t max_k = 1;
  ExhaustedMode mode = ExhaustedMode::UniformNonEdge;
  /// Stop as soon as every hitting time up to max_k is known.
  bool stop_after_hits = false;
};

struct IncrementalTrace {
  LatentSample latents;
  std::vector<Edge> edge_order;
  std::vector<std::optional<std::uint64_t>> hit_min_degree;
  std::vector<std::optional<std::uint64_t>> hit_connectivity;
  std::optional<std::uint64_t> visible_exhausted_at;
  /// True when edge_order covers all C(n,2) pairs.
  bool complete = false;

  std::optional<std::uint64_t> hit_min_degree_at(std::size_t k) const { return hit_min_degree.at(k - 1); }
  std::optional<std::uint64_t> hit_connectivity_at(std::size_t k) const {
    return hit_connectivity.at(k - 1);
  }
};

/// Requires n >= 2, max_k >= 1 and n > max_k.
IncrementalTrace incremental_process(const Graphon& g, std::size_t n, std::uint64_t seed,
                                     const IncrementalOptions& options = {});

}  // namespace graphon_lab
