#include "graphon_lab/incremental.hpp"

#include <algorithm>
#include <string>

#include "graphon_lab/analysis.hpp"
#include "graphon_lab/rng.hpp"
#include "graphon_lab/sum_tree.hpp"

namespace graphon_lab {

namespace {

class HitTracker {
 public:
  HitTracker(std::size_t n, std::size_t max_k, IncrementalTrace& trace)
      : n_(n), max_k_(max_k), trace_(trace), degree_(n, 0), below_(max_k + 1, n), uf_(n) {
    trace_.hit_min_degree.assign(max_k, std::nullopt);
    trace_.hit_connectivity.assign(max_k, std::nullopt);
  }

  void add(Edge e, std::uint64_t t) {
    for (Vertex v : {e.u, e.v}) {
      const std::size_t d = ++degree_[v];
      if (d <= max_k_ && --below_[d] == 0) trace_.hit_min_degree[d - 1] = t;
    }
    uf_.unite(e.u, e.v);
    if (!trace_.hit_connectivity[0] && uf_.components() == 1) trace_.hit_connectivity[0] = t;

    // kappa >= K is only possible once delta >= K; check each step from there.
    std::optional<Graph> current;
    for (std::size_t k = 2; k <= max_k_; ++k) {
      if (trace_.hit_connectivity[k - 1] || !trace_.hit_min_degree[k - 1]) continue;
      if (!trace_.hit_connectivity[0]) break;
      if (!current) current.emplace(n_, trace_.edge_order);
      if (!vertex_connectivity_at_least(*current, k)) break;
      trace_.hit_connectivity[k - 1] = t;
    }
  }

  bool all_hit() const {
    return std::all_of(trace_.hit_connectivity.begin(), trace_.hit_connectivity.end(),
                       [](const auto& h) { return h.has_value(); });
  }

 private:
  std::size_t n_;
  std::size_t max_k_;
  IncrementalTrace& trace_;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> below_;  // below_[K] = #{v : deg(v) < K}
  UnionFind uf_;
};

}  // namespace

IncrementalTrace incremental_process(const Graphon& g, std::size_t n, std::uint64_t seed,
                                     const IncrementalOptions& options) {
  if (n < 2) throw DomainError("incremental_process: n must be at least 2");
  if (options.max_k < 1) throw DomainError("incremental_process: maxK must be at least 1");
  if (n <= options.max_k) {
    throw DomainError("incremental_process: n must exceed maxK (n=" + std::to_string(n) +
                      ", maxK=" + std::to_string(options.max_k) + ")");
  }

  IncrementalTrace trace;
  trace.latents = sample_latents(g, n, seed);
  const auto& x = trace.latents.coords;
  const std::uint64_t pairs = pair_count(n);

  std::vector<double> weights(pairs, 0.0);
  std::vector<std::uint64_t> hidden;
  for (Vertex u = 0; u + 1 < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::uint64_t idx = pair_index(n, u, v);
      const double w = evaluate(g, x[u], x[v]);
      if (w > 0.0) {
        weights[idx] = w;
      } else {
        hidden.push_back(idx);
      }
    }
  }
  WeightedSampler visible(weights);
  weights.clear();
  weights.shrink_to_fit();

  HitTracker tracker(n, options.max_k, trace);
  trace.edge_order.reserve(options.stop_after_hits ? std::min<std::uint64_t>(pairs, 16 * n) : pairs);

  for (std::uint64_t t = 1; t <= pairs; ++t) {
    CounterRng rng(seed, Stage::Incremental, t);
    std::uint64_t idx = 0;
    if (visible.total() > 0.0) {
      idx = visible.sample(rng.uniform());
      visible.set(idx, 0.0);
    } else {
      if (!trace.visible_exhausted_at) trace.visible_exhausted_at = t - 1;
      if (options.mode == ExhaustedMode::Stall) break;
      const std::uint64_t pick = rng.below(hidden.size());
      idx = hidden[pick];
      hidden[pick] = hidden.back();
      hidden.pop_back();
    }
    const Edge e = pair_at(n, idx);
    trace.edge_order.push_back(e);
    tracker.add(e, t);
    if (options.stop_after_hits && tracker.all_hit()) break;
  }
  if (!trace.visible_exhausted_at && visible.total() <= 0.0 && !hidden.empty()) {
    trace.visible_exhausted_at = trace.edge_order.size();
  }
  trace.complete = trace.edge_order.size() == pairs;
  return trace;
}

}  // namespace graphon_lab
