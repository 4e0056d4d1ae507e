#pragma once

#include <cstdint>

namespace graphon_lab {

/// Generation stages. Each stage owns a disjoint family of substreams.
enum class Stage : std::uint64_t {
  Vertex = 1,
  Edge = 2,
  Incremental = 3,
  PointProcess = 4,
  Replicate = 5,
  Fuzz = 6,
};

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream key for (seed, stage, i, j). Keys are computed by chained
/// mixing so that neighbouring indices land on unrelated streams.
constexpr std::uint64_t stream_key(std::uint64_t seed, Stage stage, std::uint64_t i,
                                   std::uint64_t j) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(stage));
  h = mix64(h ^ i);
  h = mix64(h ^ (j * 0xd6e8feb86659fd93ULL));
  return h;
}

/// Uniform double in [0,1) from the top 53 bits of a word.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based generator over one substream. Output k of a stream is
/// mix64(key + k * golden), so draws never depend on scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
  constexpr CounterRng(std::uint64_t seed, Stage stage, std::uint64_t i,
                       std::uint64_t j = 0) noexcept
      : key_(stream_key(seed, stage, i, j)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
  }

  constexpr double uniform() noexcept { return to_unit((*this)()); }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Exponential variate with the given rate.
  double exponential(double rate) noexcept;

  /// Poisson variate by CDF inversion (exact walk). Requires mean <= 700.
  std::uint64_t poisson(double mean);

  /// Poisson variate truncated at `cap`: returns min(Y, cap). Only walks
  /// the CDF up to `cap`, which makes running minima cheap.
  std::uint64_t poisson_capped(double mean, std::uint64_t cap);

  constexpr std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Single uniform draw for the (seed, stage, i, j) substream.
constexpr double pair_uniform(std::uint64_t seed, Stage stage, std::uint64_t i,
                              std::uint64_t j) noexcept {
  return to_unit(mix64(stream_key(seed, stage, i, j)));
}

/// Seed of replicate `r` derived from a campaign's base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t r) noexcept {
  return stream_key(base, Stage::Replicate, r, 0);
}

}  // namespace graphon_lab
