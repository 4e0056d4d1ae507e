#include <algorithm>
#include <cmath>

#include "graphon_lab/graphon.hpp"

namespace graphon_lab {

ZSet z_construction(const Graphon& g, double c, std::size_t n, double psi) {
  const auto* s = std::get_if<StepGraphon>(&g.variant());
  if (s == nullptr) {
    throw UnsupportedVariant("z_construction requires a StepFunction graphon, got " +
                             std::string(g.name()));
  }
  if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("z_construction: c must be >= 1");
  if (n == 0) throw DomainError("z_construction: n must be positive");
  if (!(psi > 0.0) || !std::isfinite(psi)) throw DomainError("z_construction: psi must be positive");

  const std::size_t k = s->blocks();
  const double threshold = 2.0 * c / static_cast<double>(n);

  std::vector<double> deg(k);
  for (std::size_t b = 0; b < k; ++b) deg[b] = s->degree(static_cast<double>(b));

  std::vector<char> in_z(k, 0);
  ZSet out;
  std::size_t layer_size = 0;
  for (std::size_t b = 0; b < k; ++b) {
    if (deg[b] <= threshold) {
      in_z[b] = 1;
      ++layer_size;
    }
  }
  if (layer_size > 0) ++out.rounds;

  // Each layer is decided against the union of all earlier layers.
  while (true) {
    std::vector<std::size_t> layer;
    for (std::size_t x = 0; x < k; ++x) {
      if (in_z[x]) continue;
      double outside = 0.0;
      for (std::size_t b = 0; b < k; ++b) {
        if (!in_z[b]) outside += s->measures[b] * s->values(x, b);
      }
      if (outside < 0.25 * deg[x]) layer.push_back(x);
    }
    if (layer.empty()) break;
    for (std::size_t x : layer) in_z[x] = 1;
    ++out.rounds;
  }

  for (std::size_t b = 0; b < k; ++b) {
    if (in_z[b]) {
      out.blocks.push_back(b);
      out.measure += s->measures[b];
    }
  }
  out.measure_bound = 12.0 * c * psi / static_cast<double>(n);
  out.hypothesis_holds = gfun(g, std::min(1.0, threshold)) <= 2.0 * c * psi / static_cast<double>(n);
  return out;
}

}  // namespace graphon_lab
