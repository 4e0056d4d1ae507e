#include "graphon_lab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace graphon_lab {

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::exponential(double rate) noexcept {
  // 1 - u lies in (0, 1], so the log is finite.
  return -std::log1p(-uniform()) / rate;
}

std::uint64_t CounterRng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > 700.0) {
    throw std::domain_error("poisson: mean must lie in [0, 700]");
  }
  const double u = uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::uint64_t k = 0;
  // The walk stops once the remaining mass is below double resolution.
  while (u >= cdf && pmf > 0.0) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::uint64_t CounterRng::poisson_capped(double mean, std::uint64_t cap) {
  if (!(mean >= 0.0) || mean > 700.0) {
    throw std::domain_error("poisson: mean must lie in [0, 700]");
  }
  const double u = uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::uint64_t k = 0;
  while (k < cap && u >= cdf && pmf > 0.0) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

}  // namespace graphon_lab
