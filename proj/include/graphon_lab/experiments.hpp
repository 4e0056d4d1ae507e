#pragma once

// Config-driven replicate campaigns.
//
// Config document (JSON):
//   kind     mindeg-dist | iso-scan | conn-scan | rk-scan | hitting |
//            gfun-curve | sprout-fuzz
//   graphon | kernel   model description (see graphon_json.hpp)
//   n        integer or list of integers >= 2
//   reps     replicates per n (>= 1)
//   K        connectivity / degree level (>= 1, < min n)
//   gamma    micro/macro threshold in (0, 1/2]
//   seed     base seed
//   out      output directory
//   alphas   evaluation grid for gfun-curve
//   mode     uniform-nonedge | stall (hitting)
//   threads  worker threads
//   maxVertices  sprout size bound for sprout-fuzz
//
// Replicate r at size n uses seed stream_key(seed, Replicate, n, r).
// Results are folded in replicate order, so the output does not depend on
// the thread count.
//
// CSV schema v1: kind,n,statistic,param,estimate,stderr,reps
// Proportion rows carry stderr = sqrt(p (1 - p) / reps). Wall time is
// reported only in the JSON summary so that reruns give identical CSV.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphon_lab/incremental.hpp"
#include "graphon_lab/sampler.hpp"

namespace graphon_lab {

/// Invalid configuration field. The message starts with its JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class ExperimentKind { MindegDist, IsoScan, ConnScan, RkScan, Hitting, GfunCurve, SproutFuzz };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::IsoScan;
  std::optional<Model> model;
  std::vector<std::size_t> n;
  std::uint64_t reps = 1;
  std::size_t k = 1;
  double gamma = 0.25;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::vector<double> alphas;
  ExhaustedMode mode = ExhaustedMode::UniformNonEdge;
  std::size_t threads = 1;
  std::size_t max_vertices = 50;
};

/// Throws ConfigError for malformed or out-of-range fields and
/// UnsupportedVariant for a model that the kind cannot use.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct ResultRow {
  std::string kind;
  std::optional<std::size_t> n;
  std::string statistic;
  std::string param;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t reps = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  double wall_seconds = 0.0;
};

ExperimentResult run(const ExperimentConfig& config);

/// Seed of replicate r at size n.
std::uint64_t replicate_seed(std::uint64_t base, std::size_t n, std::uint64_t r) noexcept;

double proportion_stderr(double p, std::uint64_t reps) noexcept;

void write_csv(std::ostream& os, const ExperimentResult& result);
nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result);

/// Writes <out>/<kind>.csv and <out>/<kind>.summary.json; returns the CSV path.
std::string write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace graphon_lab
