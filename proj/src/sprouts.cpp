#include "graphon_lab/sprouts.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "graphon_lab/graphon.hpp"
#include "graphon_lab/graphon_json.hpp"

namespace graphon_lab {

struct SproutAccess {
  static Sprout make(std::vector<std::uint32_t> vertices, std::vector<WeightedEdge> edges) {
    Sprout s;
    s.vertices_ = std::move(vertices);
    s.edges_ = std::move(edges);
    return s;
  }
};

namespace {

std::size_t vertex_slot(const std::vector<std::uint32_t>& vertices, std::uint32_t v) {
  return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) -
                                  vertices.begin());
}

bool edge_less(const WeightedEdge& a, const WeightedEdge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string edge_name(std::uint32_t u, std::uint32_t v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

// Returns the position of the first vertex breaking the condition, or
// vertices.size() when there is none.
std::size_t first_violation(const std::vector<std::uint32_t>& vertices,
                            const std::vector<WeightedEdge>& edges,
                            const std::vector<char>* present, std::vector<mpq_class>& down,
                            std::vector<mpq_class>& up) {
  down.assign(vertices.size(), 0);
  up.assign(vertices.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (present != nullptr && !(*present)[e]) continue;
    up[vertex_slot(vertices, edges[e].u)] += edges[e].w;
    down[vertex_slot(vertices, edges[e].v)] += edges[e].w;
  }
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    if (down[k] < 3 * up[k]) return k;
  }
  return vertices.size();
}

}  // namespace

bool Sprout::has_vertex(std::uint32_t v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::optional<mpq_class> Sprout::weight(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  WeightedEdge key{a, b, 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, edge_less);
  if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
  return it->w;
}

std::variant<Sprout, SproutViolation> validate_sprout(std::vector<std::uint32_t> vertices,
                                                      std::vector<WeightedEdge> edges) {
  if (vertices.empty()) throw DomainError("sprout: vertex set is empty");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw DomainError("sprout: repeated vertex");
  }
  for (auto& e : edges) {
    if (e.u == e.v) throw DomainError("sprout: loop at " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!std::binary_search(vertices.begin(), vertices.end(), e.u) ||
        !std::binary_search(vertices.begin(), vertices.end(), e.v)) {
      throw DomainError("sprout: edge " + edge_name(e.u, e.v) + " leaves the vertex set");
    }
    e.w.canonicalize();
    if (sgn(e.w) < 0) throw DomainError("sprout: negative weight on " + edge_name(e.u, e.v));
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw DomainError("sprout: repeated edge " + edge_name(edges[i].u, edges[i].v));
    }
  }
  std::vector<mpq_class> down;
  std::vector<mpq_class> up;
  const std::size_t bad = first_violation(vertices, edges, nullptr, down, up);
  if (bad < vertices.size()) return SproutViolation{vertices[bad], down[bad], up[bad]};
  return SproutAccess::make(std::move(vertices), std::move(edges));
}

Sprout make_sprout(std::vector<std::uint32_t> vertices, std::vector<WeightedEdge> edges) {
  auto result = validate_sprout(std::move(vertices), std::move(edges));
  if (auto* v = std::get_if<SproutViolation>(&result)) {
    throw DomainError("sprout: flow reduction fails at vertex " + std::to_string(v->vertex) +
                      " (down " + rational_string(v->down) + " < 3 * up " +
                      rational_string(v->up) + ")");
  }
  return std::get<Sprout>(std::move(result));
}

SproutStats sprout_stats(const Sprout& s) {
  SproutStats st;
  st.origin = s.origin();
  st.depth = s.vertices().back() - s.origin();
  st.flow = 0;
  st.total = 0;
  for (const auto& e : s.edges()) {
    st.total += e.w;
    if (e.u == st.origin) st.flow += e.w;
  }
  st.flow *= 3;
  return st;
}

bool weight_bound_holds(const Sprout& s) {
  const SproutStats st = sprout_stats(s);
  return 2 * st.total <= st.flow;
}

Cover cover_decompose(const Sprout& s) {
  const auto& vertices = s.vertices();
  std::vector<WeightedEdge> rest = s.edges();
  std::vector<char> present(rest.size(), 1);

  // Upward edges of the vertex in slot k occupy [first_up[k], first_up[k + 1]).
  std::vector<std::size_t> first_up(vertices.size() + 1, 0);
  for (const auto& e : rest) ++first_up[vertex_slot(vertices, e.u) + 1];
  std::partial_sum(first_up.begin(), first_up.end(), first_up.begin());

  Cover cover;
  std::vector<mpq_class> inflow(vertices.size());
  std::vector<mpq_class> down;
  std::vector<mpq_class> up;
  for (std::size_t oe = first_up[0]; oe < first_up[1]; ++oe) {
    const std::uint32_t h = rest[oe].v;
    if (sgn(rest[oe].w) == 0) {
      cover.members.push_back({h, make_sprout({h}, {})});
      continue;
    }
    const std::size_t hk = vertex_slot(vertices, h);
    std::fill(inflow.begin() + static_cast<std::ptrdiff_t>(hk), inflow.end(), mpq_class(0));
    inflow[hk] = rest[oe].w;

    std::vector<std::uint32_t> member_vertices{h};
    std::vector<WeightedEdge> member_edges;
    for (std::size_t k = hk; k < vertices.size(); ++k) {
      if (sgn(inflow[k]) == 0) continue;
      const mpq_class potential = inflow[k] / 3;
      mpq_class available = 0;
      for (std::size_t e = first_up[k]; e < first_up[k + 1]; ++e) available += rest[e].w;
      mpq_class remaining = std::min(potential, available);
      for (std::size_t e = first_up[k]; e < first_up[k + 1] && sgn(remaining) > 0; ++e) {
        if (sgn(rest[e].w) == 0) continue;
        mpq_class take = std::min(rest[e].w, remaining);
        remaining -= take;
        rest[e].w -= take;
        inflow[vertex_slot(vertices, rest[e].v)] += take;
        member_vertices.push_back(rest[e].v);
        member_edges.push_back({rest[e].u, rest[e].v, std::move(take)});
      }
    }
    present[oe] = 0;
    ++cover.steps;

    std::sort(member_vertices.begin(), member_vertices.end());
    member_vertices.erase(std::unique(member_vertices.begin(), member_vertices.end()),
                          member_vertices.end());
    auto member = validate_sprout(std::move(member_vertices), std::move(member_edges));
    if (!std::holds_alternative<Sprout>(member)) {
      throw std::logic_error("cover_decompose: member for " + std::to_string(h) +
                             " is not a sprout");
    }
    const std::size_t bad = first_violation(vertices, rest, &present, down, up);
    if (bad < vertices.size()) {
      throw std::logic_error("cover_decompose: remainder after peeling " + std::to_string(h) +
                             " fails at vertex " + std::to_string(vertices[bad]));
    }
    cover.members.push_back({h, std::get<Sprout>(std::move(member))});
  }
  return cover;
}

CoverCheck verify_cover(const Sprout& s, const std::vector<CoverMember>& family) {
  auto fail = [](std::string clause, std::string detail) {
    return CoverCheck{false, std::move(clause), std::move(detail)};
  };
  const std::uint32_t o = s.origin();
  const auto& edges = s.edges();

  std::vector<std::uint32_t> expected;
  for (const auto& e : edges) {
    if (e.u == o) expected.push_back(e.v);
  }
  std::vector<std::uint32_t> indices;
  for (const auto& m : family) indices.push_back(m.index);
  std::sort(indices.begin(), indices.end());
  if (indices != expected) {
    return fail("index", "family indices differ from the origin-neighbours");
  }

  std::vector<mpq_class> covered(edges.size());
  for (const auto& m : family) {
    const Sprout& sub = m.sprout;
    const std::string who = "member " + std::to_string(m.index);
    for (std::uint32_t v : sub.vertices()) {
      if (!s.has_vertex(v)) return fail("containment", who + ": vertex " + std::to_string(v));
    }
    for (const auto& e : sub.edges()) {
      WeightedEdge key{e.u, e.v, 0};
      auto it = std::lower_bound(edges.begin(), edges.end(), key, edge_less);
      if (it == edges.end() || it->u != e.u || it->v != e.v) {
        return fail("containment", who + ": edge " + edge_name(e.u, e.v));
      }
      covered[static_cast<std::size_t>(it - edges.begin())] += e.w;
    }
    if (sub.origin() != m.index) {
      return fail("origin", who + ": origin " + std::to_string(sub.origin()));
    }
    const mpq_class flow = sprout_stats(sub).flow;
    const mpq_class budget = *s.weight(o, m.index);
    if (flow > budget) {
      return fail("flow", who + ": flow " + rational_string(flow) + " > " + rational_string(budget));
    }
    auto again = validate_sprout(sub.vertices(), sub.edges());
    if (const auto* v = std::get_if<SproutViolation>(&again)) {
      return fail("flow-reduction", who + ": vertex " + std::to_string(v->vertex));
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].u == o) continue;
    if (covered[e] != edges[e].w) {
      return fail("conservation", "edge " + edge_name(edges[e].u, edges[e].v) + ": " +
                                      rational_string(edges[e].w) + " != " +
                                      rational_string(covered[e]));
    }
  }
  return {};
}

Sprout random_sprout(CounterRng& rng, std::size_t max_vertices) {
  constexpr std::uint32_t kRange = 101;
  if (max_vertices < 1 || max_vertices > kRange) {
    throw DomainError("random_sprout: max_vertices must lie in [1, 101]");
  }
  const std::size_t m = 1 + rng.below(max_vertices);
  std::vector<std::uint32_t> pool(kRange);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < m; ++i) {
    std::swap(pool[i], pool[i + rng.below(kRange - i)]);
  }
  std::vector<std::uint32_t> vertices(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(vertices.begin(), vertices.end());

  static constexpr double kDensity[] = {0.05, 0.2, 0.5, 1.0};
  const double density = kDensity[rng.below(4)];
  auto random_weight = [&] {
    const auto den = static_cast<long>(1 + rng.below(12));
    const auto num = static_cast<long>(rng.below(13));
    mpq_class w(num, den);
    w.canonicalize();
    return w;
  };

  std::vector<mpq_class> up(m, 0);
  std::vector<WeightedEdge> edges;
  for (std::size_t k = m; k-- > 1;) {
    const std::size_t start = edges.size();
    mpq_class down = 0;
    for (std::size_t l = 0; l < k; ++l) {
      if (rng.uniform() < density) {
        edges.push_back({vertices[l], vertices[k], random_weight()});
        down += edges.back().w;
      }
    }
    const mpq_class deficit = 3 * up[k] - down;
    if (sgn(deficit) > 0) {
      if (edges.size() == start) {
        edges.push_back({vertices[rng.below(k)], vertices[k], 0});
      }
      edges[start + rng.below(edges.size() - start)].w += deficit;
    }
    for (std::size_t e = start; e < edges.size(); ++e) {
      up[vertex_slot(vertices, edges[e].u)] += edges[e].w;
    }
  }
  return make_sprout(std::move(vertices), std::move(edges));
}

nlohmann::json to_json(const Sprout& s) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : s.edges()) edges.push_back({e.u, e.v, rational_string(e.w)});
  return {{"vertices", s.vertices()}, {"edges", std::move(edges)}};
}

namespace {

bool is_index(const nlohmann::json& v) {
  return v.is_number_integer() && v.get<std::int64_t>() >= 0 &&
         v.get<std::int64_t>() <= std::numeric_limits<std::uint32_t>::max();
}

}  // namespace

Sprout sprout_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("", "sprout must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw FormatError("/vertices", "expected an array");
  }
  std::vector<std::uint32_t> vertices;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!is_index(v)) {
      throw FormatError("/vertices/" + std::to_string(i), "expected a nonnegative integer");
    }
    vertices.push_back(v.get<std::uint32_t>());
  }
  std::vector<WeightedEdge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw FormatError("/edges", "expected an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& e = j["edges"][i];
      const std::string path = "/edges/" + std::to_string(i);
      if (!e.is_array() || e.size() != 3 || !is_index(e[0]) || !is_index(e[1])) {
        throw FormatError(path, "expected [i, j, \"p/q\"]");
      }
      mpq_class w;
      if (e[2].is_string()) {
        try {
          w = mpq_class(e[2].get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
          throw FormatError(path + "/2", "not a rational: " + e[2].get<std::string>());
        }
        if (sgn(w.get_den()) == 0) throw FormatError(path + "/2", "zero denominator");
      } else if (e[2].is_number_integer()) {
        w = mpq_class(e[2].get<long>());
      } else {
        throw FormatError(path + "/2", "expected a rational string");
      }
      w.canonicalize();
      edges.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), std::move(w)});
    }
  }
  return make_sprout(std::move(vertices), std::move(edges));
}

}  // namespace graphon_lab
