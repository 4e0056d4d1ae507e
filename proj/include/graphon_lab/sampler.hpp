#pragma once

// Two-stage generation of RG(n, W) and of the log-rescaled kernel model
// RK(n, Gamma).
//
// Vertex stage: coordinate i is drawn from substream (seed, Vertex, i).
// Edge stage: the pair {i, j}, i < j, is an edge iff
//   pair_uniform(seed, Edge, i, j) < p(x_i, x_j),
// where p = W for graphons and p = min(1, (ln n / n) Gamma) for kernels.
// Probabilities 0 and 1 are decided without a draw. The verdict for a pair
// is therefore a pure function of (seed, i, j, x_i, x_j), which lets the
// specialised statistics below agree exactly with the full sampler.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "graphon_lab/graph.hpp"
#include "graphon_lab/graphon.hpp"

namespace graphon_lab {

using Model = std::variant<Graphon, Kernel>;

struct LatentSample {
  std::size_t n = 0;
  std::vector<double> coords;
  std::uint64_t seed = 0;
  friend bool operator==(const LatentSample&, const LatentSample&) = default;
};

struct SampledGraph {
  Graph graph;
  LatentSample latents;
  Model model;
  std::uint64_t seed = 0;
};

LatentSample sample_latents(const Graphon& g, std::size_t n, std::uint64_t seed);
LatentSample sample_latents(const Kernel& k, std::size_t n, std::uint64_t seed);

SampledGraph sample_rg(const Graphon& g, std::size_t n, std::uint64_t seed);
SampledGraph sample_rk(const Kernel& k, std::size_t n, std::uint64_t seed);

/// Edge probability used by sample_rk for a kernel value.
double rk_probability(double gamma, std::size_t n) noexcept;

/// Degree sequence of sample_rg(g, n, seed) without materialising edges.
std::vector<std::uint32_t> degree_sequence_rg(const Graphon& g, const LatentSample& latents);

/// min(delta, cap) for the graph sample_rg / sample_rk would produce from
/// these latents. Vertices are scanned in increasing model degree and each
/// scan stops once it cannot lower the running minimum.
std::size_t min_degree_rg(const Graphon& g, const LatentSample& latents, std::size_t cap);
std::size_t min_degree_rk(const Kernel& k, const LatentSample& latents, std::size_t cap);

// Serialisation. The edge list is "n m" followed by one "u v" line per
// edge (0-based, u < v, lexicographic). The sidecar holds the model,
// seed and latent coordinates.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json sidecar_json(const SampledGraph& s);

}  // namespace graphon_lab
