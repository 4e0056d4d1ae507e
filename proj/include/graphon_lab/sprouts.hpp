#pragma once

// Sprouts: finite weighted graphs on nonnegative integers in which every
// vertex other than the smallest (the origin) carries at least three times
// as much weight on its downward edges as on its upward ones.
//
// All weights are exact rationals. A Sprout value is only produced by
// validate_sprout, so holding one means the condition has been checked.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "graphon_lab/rng.hpp"

namespace graphon_lab {

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  mpq_class w;
};

class Sprout {
 public:
  const std::vector<std::uint32_t>& vertices() const noexcept { return vertices_; }
  /// Sorted by (u, v) with u < v.
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  std::uint32_t origin() const noexcept { return vertices_.front(); }
  bool has_vertex(std::uint32_t v) const noexcept;
  /// Weight of {a, b}, or nothing when the pair is not an edge.
  std::optional<mpq_class> weight(std::uint32_t a, std::uint32_t b) const;

 private:
  friend struct SproutAccess;
  std::vector<std::uint32_t> vertices_;
  std::vector<WeightedEdge> edges_;
};

/// First vertex (in increasing order) where down < 3 * up.
struct SproutViolation {
  std::uint32_t vertex = 0;
  mpq_class down;
  mpq_class up;
};

/// Throws DomainError for an empty vertex set, negative weights, loops,
/// repeated pairs or endpoints outside the vertex set.
std::variant<Sprout, SproutViolation> validate_sprout(std::vector<std::uint32_t> vertices,
                                                      std::vector<WeightedEdge> edges);

/// validate_sprout that throws DomainError on a violation.
Sprout make_sprout(std::vector<std::uint32_t> vertices, std::vector<WeightedEdge> edges);

struct SproutStats {
  std::uint32_t origin = 0;
  mpq_class flow;   // 3 * weight on origin edges
  mpq_class total;  // all weight
  std::uint32_t depth = 0;
};

SproutStats sprout_stats(const Sprout& s);

/// t(S) <= f(S) / 2.
bool weight_bound_holds(const Sprout& s);

struct CoverMember {
  std::uint32_t index = 0;  // the origin-neighbour this member stands for
  Sprout sprout;
};

struct Cover {
  std::vector<CoverMember> members;  // ascending index
  /// Number of peel steps, one per origin edge of positive weight.
  std::size_t steps = 0;
};

/// Cover of `s` indexed by the origin-neighbours. Origin-neighbours h of
/// positive weight are peeled in increasing order: a potential sweep over
/// the vertices >= h assigns each active vertex's budget to its upward
/// edges smallest-endpoint first, the result becomes the member for h, and
/// it is subtracted from the remainder together with the edge {o, h}. The
/// remainder is checked to be a sprout after every step (std::logic_error
/// otherwise). Zero-weight origin-neighbours get single-vertex members.
/// Members keep only their positive-weight edges.
Cover cover_decompose(const Sprout& s);

struct CoverCheck {
  bool ok = true;
  std::string clause;  // "index", "containment", "origin", "flow", "flow-reduction", "conservation"
  std::string detail;
};

CoverCheck verify_cover(const Sprout& s, const std::vector<CoverMember>& family);

/// Random valid sprout: 1..max_vertices vertices drawn from [0, 100],
/// weights with denominators at most 12, built from the top vertex down
/// so the condition holds at every vertex.
Sprout random_sprout(CounterRng& rng, std::size_t max_vertices = 50);

/// {"vertices": [...], "edges": [[i, j, "p/q"], ...]}
nlohmann::json to_json(const Sprout& s);
/// Throws FormatError on malformed input and DomainError on an invalid sprout.
Sprout sprout_from_json(const nlohmann::json& j);

}  // namespace graphon_lab
