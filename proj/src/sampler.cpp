#include "graphon_lab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "graphon_lab/graphon_json.hpp"
#include "graphon_lab/rng.hpp"

namespace graphon_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool edge_verdict(std::uint64_t seed, std::size_t i, std::size_t j, double p) noexcept {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  if (i > j) std::swap(i, j);
  return pair_uniform(seed, Stage::Edge, i, j) < p;
}

double uniform_coord(std::uint64_t seed, std::size_t i) noexcept {
  return pair_uniform(seed, Stage::Vertex, i, 0);
}

std::vector<double> block_coords(const BlockModel& b, std::size_t n, std::uint64_t seed) {
  std::vector<double> cumulative(b.blocks());
  std::partial_sum(b.measures.begin(), b.measures.end(), cumulative.begin());
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform_coord(seed, i) * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto block = static_cast<std::size_t>(it - cumulative.begin());
    block = std::min(block, b.blocks() - 1);
    coords[i] = static_cast<double>(block);
  }
  return coords;
}

std::vector<double> interval_coords(std::size_t n, std::uint64_t seed) {
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = uniform_coord(seed, i);
  return coords;
}

// Calls f(prob, model_degree) where prob(i, j) is the edge probability of
// the pair and model_degree(i) the graphon degree of vertex i.
template <class F>
void with_pair_probability(const Graphon& g, const std::vector<double>& x, F&& f) {
  std::visit(Overloaded{
                 [&](const PowerProductGraphon& w) {
                   std::vector<double> a(x.size());
                   for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::pow(x[i], w.t);
                   f([&](std::size_t i, std::size_t j) { return a[i] * a[j]; },
                     [&](std::size_t i) { return w.degree(x[i]); });
                 },
                 [&](const auto& w) {
                   f([&](std::size_t i, std::size_t j) { return w(x[i], x[j]); },
                     [&](std::size_t i) { return w.degree(x[i]); });
                 },
             },
             g.variant());
}

template <class F>
void with_pair_probability(const Kernel& k, const std::vector<double>& x, F&& f) {
  const double scale = std::log(static_cast<double>(x.size())) / static_cast<double>(x.size());
  std::visit(
      [&](const auto& w) {
        f([&](std::size_t i, std::size_t j) { return std::min(1.0, scale * w(x[i], x[j])); },
          [&](std::size_t i) { return w.degree(x[i]); });
      },
      k.variant());
}

template <class Prob>
Graph build_graph(std::size_t n, std::uint64_t seed, Prob&& prob) {
  GraphBuilder builder(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge_verdict(seed, i, j, prob(i, j))) {
        builder.add_ordered(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return std::move(builder).finish();
}

template <class Prob, class Deg>
std::size_t early_exit_min_degree(std::size_t n, std::uint64_t seed, std::size_t cap, Prob&& prob,
                                  Deg&& model_degree) {
  std::size_t best = std::min(cap, n - 1);
  if (best == 0) return 0;
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = model_degree(i);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  for (std::size_t i : order) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n && count < best; ++j) {
      if (j != i && edge_verdict(seed, i, j, prob(i, j))) ++count;
    }
    if (count < best) {
      best = count;
      if (best == 0) break;
    }
  }
  return best;
}

void check_n(std::size_t n, std::size_t minimum, const char* op) {
  if (n < minimum) {
    throw DomainError(std::string(op) + ": n must be at least " + std::to_string(minimum));
  }
}

}  // namespace

LatentSample sample_latents(const Graphon& g, std::size_t n, std::uint64_t seed) {
  check_n(n, 1, "sample_latents");
  LatentSample out{n, {}, seed};
  if (const auto* s = std::get_if<StepGraphon>(&g.variant())) {
    out.coords = block_coords(*s, n, seed);
  } else {
    out.coords = interval_coords(n, seed);
  }
  return out;
}

LatentSample sample_latents(const Kernel& k, std::size_t n, std::uint64_t seed) {
  check_n(n, 1, "sample_latents");
  LatentSample out{n, {}, seed};
  if (const auto* s = std::get_if<StepKernel>(&k.variant())) {
    out.coords = block_coords(*s, n, seed);
  } else {
    out.coords = interval_coords(n, seed);
  }
  return out;
}

double rk_probability(double gamma, std::size_t n) noexcept {
  const double scale = std::log(static_cast<double>(n)) / static_cast<double>(n);
  return std::min(1.0, scale * gamma);
}

SampledGraph sample_rg(const Graphon& g, std::size_t n, std::uint64_t seed) {
  SampledGraph out{Graph{}, sample_latents(g, n, seed), g, seed};
  with_pair_probability(g, out.latents.coords,
                        [&](auto&& prob, auto&&) { out.graph = build_graph(n, seed, prob); });
  return out;
}

SampledGraph sample_rk(const Kernel& k, std::size_t n, std::uint64_t seed) {
  check_n(n, 2, "sample_rk");
  SampledGraph out{Graph{}, sample_latents(k, n, seed), k, seed};
  with_pair_probability(k, out.latents.coords,
                        [&](auto&& prob, auto&&) { out.graph = build_graph(n, seed, prob); });
  return out;
}

std::vector<std::uint32_t> degree_sequence_rg(const Graphon& g, const LatentSample& latents) {
  const std::size_t n = latents.coords.size();
  std::vector<std::uint32_t> deg(n, 0);
  with_pair_probability(g, latents.coords, [&](auto&& prob, auto&&) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge_verdict(latents.seed, i, j, prob(i, j))) {
          ++deg[i];
          ++deg[j];
        }
      }
    }
  });
  return deg;
}

std::size_t min_degree_rg(const Graphon& g, const LatentSample& latents, std::size_t cap) {
  const std::size_t n = latents.coords.size();
  check_n(n, 1, "min_degree_rg");
  std::size_t out = 0;
  with_pair_probability(g, latents.coords, [&](auto&& prob, auto&& deg) {
    out = early_exit_min_degree(n, latents.seed, cap, prob, deg);
  });
  return out;
}

std::size_t min_degree_rk(const Kernel& k, const LatentSample& latents, std::size_t cap) {
  const std::size_t n = latents.coords.size();
  check_n(n, 2, "min_degree_rk");
  std::size_t out = 0;
  with_pair_probability(k, latents.coords, [&](auto&& prob, auto&& deg) {
    out = early_exit_min_degree(n, latents.seed, cap, prob, deg);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Serialisation

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(is >> n >> m)) throw std::invalid_argument("edge list: missing 'n m' header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(is >> u >> v)) {
      throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges, got " +
                                  std::to_string(k));
    }
    if (u >= n || v >= n) throw std::invalid_argument("edge list: endpoint out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(n, edges);
}

nlohmann::json model_to_json(const Model& m) {
  nlohmann::json out;
  std::visit(Overloaded{
                 [&](const Graphon& g) { out["graphon"] = to_json(g); },
                 [&](const Kernel& k) { out["kernel"] = to_json(k); },
             },
             m);
  return out;
}

Model model_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  const bool has_g = j.contains("graphon");
  const bool has_k = j.contains("kernel");
  if (has_g == has_k) throw FormatError(path, "expected exactly one of 'graphon' or 'kernel'");
  if (has_g) return graphon_from_json(j["graphon"], path + "/graphon");
  return kernel_from_json(j["kernel"], path + "/kernel");
}

nlohmann::json sidecar_json(const SampledGraph& s) {
  nlohmann::json out = model_to_json(s.model);
  out["n"] = s.latents.n;
  out["seed"] = s.seed;
  out["edges"] = s.graph.size();
  out["latents"] = s.latents.coords;
  return out;
}

}  // namespace graphon_lab
