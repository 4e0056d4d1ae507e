#include "graphon_lab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>

#include "graphon_lab/analysis.hpp"
#include "graphon_lab/graphon_json.hpp"
#include "graphon_lab/rng.hpp"
#include "graphon_lab/sprouts.hpp"
#include "graphon_lab/stats.hpp"

namespace graphon_lab {

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::MindegDist, "mindeg-dist"}, {ExperimentKind::IsoScan, "iso-scan"},
    {ExperimentKind::ConnScan, "conn-scan"},     {ExperimentKind::RkScan, "rk-scan"},
    {ExperimentKind::Hitting, "hitting"},        {ExperimentKind::GfunCurve, "gfun-curve"},
    {ExperimentKind::SproutFuzz, "sprout-fuzz"},
};

bool needs_model(ExperimentKind k) { return k != ExperimentKind::SproutFuzz; }
bool needs_sizes(ExperimentKind k) {
  return k != ExperimentKind::SproutFuzz && k != ExperimentKind::GfunCurve;
}

std::uint64_t read_unsigned(const nlohmann::json& j, const std::string& path, std::uint64_t min) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v < min) throw ConfigError(path, "must be at least " + std::to_string(min));
  return v;
}

double read_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

// Runs f(r) for r in [0, count) on `threads` workers; results land in
// replicate order. The first exception (by replicate index) is rethrown.
template <class T, class F>
std::vector<T> replicate_map(std::uint64_t count, std::size_t threads, F f) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t r = next++; r < count; r = next++) {
      try {
        out[r] = f(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ResultRow proportion_row(const ExperimentConfig& c, std::optional<std::size_t> n,
                         std::string statistic, std::string param, std::uint64_t hits) {
  const double p = static_cast<double>(hits) / static_cast<double>(c.reps);
  return {to_string(c.kind), n, std::move(statistic), std::move(param), p,
          proportion_stderr(p, c.reps), c.reps};
}

std::size_t sampled_min_degree(const Model& m, std::size_t n, std::uint64_t seed, std::size_t cap) {
  if (const auto* g = std::get_if<Graphon>(&m)) {
    return min_degree_rg(*g, sample_latents(*g, n, seed), cap);
  }
  const auto& k = std::get<Kernel>(m);
  return min_degree_rk(k, sample_latents(k, n, seed), cap);
}

Graph sampled_graph(const Model& m, std::size_t n, std::uint64_t seed) {
  if (const auto* g = std::get_if<Graphon>(&m)) return sample_rg(*g, n, seed).graph;
  return sample_rk(std::get<Kernel>(m), n, seed).graph;
}

void run_mindeg(const ExperimentConfig& c, std::size_t n, std::vector<ResultRow>& rows) {
  auto deltas = replicate_map<std::uint64_t>(c.reps, c.threads, [&](std::uint64_t r) {
    return sampled_min_degree(*c.model, n, replicate_seed(c.seed, n, r), n);
  });
  EmpiricalDistribution dist;
  for (auto d : deltas) dist.add(d);
  for (std::uint64_t k = 0; k <= dist.max_outcome(); ++k) {
    rows.push_back(proportion_row(c, n, "delta", std::to_string(k), dist.count(k)));
  }
}

void run_iso(const ExperimentConfig& c, std::size_t n, std::vector<ResultRow>& rows) {
  auto iso = replicate_map<char>(c.reps, c.threads, [&](std::uint64_t r) -> char {
    return sampled_min_degree(*c.model, n, replicate_seed(c.seed, n, r), 1) == 0;
  });
  rows.push_back(proportion_row(c, n, "isolated", "", std::count(iso.begin(), iso.end(), 1)));
}

struct ConnOutcome {
  bool connected = false;
  bool k_connected = false;
  bool micro = false;
  bool macro = false;
  bool isolated = false;
};

void run_conn(const ExperimentConfig& c, std::size_t n, std::vector<ResultRow>& rows) {
  auto outcomes = replicate_map<ConnOutcome>(c.reps, c.threads, [&](std::uint64_t r) {
    const Graph g = sampled_graph(*c.model, n, replicate_seed(c.seed, n, r));
    const GraphStats st = degree_stats(g);
    ConnOutcome o;
    o.connected = st.component_sizes.size() == 1;
    o.isolated = st.isolated_count > 0;
    o.k_connected = o.connected && vertex_connectivity_at_least(g, c.k);
    const Disconnection d = micro_macro_from_sizes(st.component_sizes, c.gamma);
    o.micro = d.micro;
    o.macro = d.macro;
    return o;
  });
  auto count = [&](bool ConnOutcome::*field) {
    return static_cast<std::uint64_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [&](const ConnOutcome& o) { return o.*field; }));
  };
  const std::string gamma = exact_decimal(c.gamma);
  rows.push_back(proportion_row(c, n, "connected", "", count(&ConnOutcome::connected)));
  if (c.kind == ExperimentKind::RkScan) {
    rows.push_back(proportion_row(c, n, "isolated", "", count(&ConnOutcome::isolated)));
    return;
  }
  rows.push_back(proportion_row(c, n, "k-connected", std::to_string(c.k), count(&ConnOutcome::k_connected)));
  rows.push_back(proportion_row(c, n, "micro-disconnected", gamma, count(&ConnOutcome::micro)));
  rows.push_back(proportion_row(c, n, "macro-disconnected", gamma, count(&ConnOutcome::macro)));
}

void run_hitting(const ExperimentConfig& c, std::size_t n, std::vector<ResultRow>& rows) {
  const auto& g = std::get<Graphon>(*c.model);
  IncrementalOptions opt;
  opt.max_k = c.k;
  opt.mode = c.mode;
  opt.stop_after_hits = true;
  // Bit K-1 set: hitConn[K] == hitMinDeg[K]. Bit 63: hitConn >= hitMinDeg for all K.
  auto masks = replicate_map<std::uint64_t>(c.reps, c.threads, [&](std::uint64_t r) {
    const IncrementalTrace t = incremental_process(g, n, replicate_seed(c.seed, n, r), opt);
    std::uint64_t mask = std::uint64_t{1} << 63;
    for (std::size_t k = 1; k <= c.k; ++k) {
      const auto md = t.hit_min_degree_at(k);
      const auto kc = t.hit_connectivity_at(k);
      if (md == kc) mask |= std::uint64_t{1} << (k - 1);
      if (kc && (!md || *kc < *md)) mask &= ~(std::uint64_t{1} << 63);
    }
    return mask;
  });
  for (std::size_t k = 1; k <= c.k; ++k) {
    const auto hits = std::count_if(masks.begin(), masks.end(),
                                    [&](std::uint64_t m) { return (m >> (k - 1)) & 1; });
    rows.push_back(proportion_row(c, n, "hit-equal", std::to_string(k), hits));
  }
  const auto ordered =
      std::count_if(masks.begin(), masks.end(), [](std::uint64_t m) { return (m >> 63) & 1; });
  rows.push_back(proportion_row(c, n, "hit-ordered", std::to_string(c.k), ordered));
}

void run_gfun(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const auto& g = std::get<Graphon>(*c.model);
  for (double a : c.alphas) {
    const double v = gfun(g, a);
    rows.push_back({to_string(c.kind), std::nullopt, "g", exact_decimal(a), v, 0.0, 0});
    if (a > 0.0) {
      rows.push_back({to_string(c.kind), std::nullopt, "g/alpha", exact_decimal(a), v / a, 0.0, 0});
    }
  }
}

void run_sprout_fuzz(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  // Bits: 0 valid, 1 weight bound, 2 cover verified.
  auto masks = replicate_map<unsigned>(c.reps, c.threads, [&](std::uint64_t r) {
    CounterRng rng(c.seed, Stage::Fuzz, r);
    const Sprout s = random_sprout(rng, c.max_vertices);
    unsigned mask = 0;
    if (std::holds_alternative<Sprout>(validate_sprout(s.vertices(), s.edges()))) mask |= 1;
    if (weight_bound_holds(s)) mask |= 2;
    if (verify_cover(s, cover_decompose(s).members).ok) mask |= 4;
    return mask;
  });
  const char* names[] = {"valid", "weight-bound", "cover"};
  for (unsigned bit = 0; bit < 3; ++bit) {
    const auto hits =
        std::count_if(masks.begin(), masks.end(), [&](unsigned m) { return (m >> bit) & 1; });
    rows.push_back(proportion_row(c, std::nullopt, names[bit], "", hits));
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw ConfigError("/kind", "unknown experiment kind '" + name + "'");
}

std::uint64_t replicate_seed(std::uint64_t base, std::size_t n, std::uint64_t r) noexcept {
  return stream_key(base, Stage::Replicate, n, r);
}

double proportion_stderr(double p, std::uint64_t reps) noexcept {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::set<std::string> known = {"kind",  "graphon", "kernel", "n",       "reps",
                                              "K",     "gamma",   "seed",   "out",     "alphas",
                                              "mode",  "threads", "maxVertices"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("/" + key, "unknown field");
  }

  ExperimentConfig c;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("/kind", "expected a string");
  c.kind = parse_kind(j["kind"].get<std::string>());

  if (j.contains("graphon") || j.contains("kernel")) {
    try {
      nlohmann::json m;
      if (j.contains("graphon")) m["graphon"] = j["graphon"];
      if (j.contains("kernel")) m["kernel"] = j["kernel"];
      c.model = model_from_json(m);
    } catch (const FormatError& e) {
      const std::string what = e.what();
      throw ConfigError(e.path(), what.substr(std::min(what.size(), e.path().size() + 2)));
    }
  }
  if (needs_model(c.kind) && !c.model) throw ConfigError("/graphon", "a graphon or kernel is required");

  if (j.contains("n")) {
    const auto& n = j["n"];
    if (n.is_array()) {
      if (n.empty()) throw ConfigError("/n", "expected at least one size");
      for (std::size_t i = 0; i < n.size(); ++i) {
        c.n.push_back(read_unsigned(n[i], "/n/" + std::to_string(i), 2));
      }
    } else {
      c.n.push_back(read_unsigned(n, "/n", 2));
    }
  }
  if (needs_sizes(c.kind) && c.n.empty()) throw ConfigError("/n", "required for " + to_string(c.kind));

  if (j.contains("reps")) c.reps = read_unsigned(j["reps"], "/reps", 1);
  if (j.contains("K")) c.k = read_unsigned(j["K"], "/K", 1);
  if (!c.n.empty() && c.k >= *std::min_element(c.n.begin(), c.n.end())) {
    throw ConfigError("/K", "must be smaller than every n");
  }
  if (c.k > 63) throw ConfigError("/K", "must be at most 63");
  if (j.contains("gamma")) {
    c.gamma = read_number(j["gamma"], "/gamma");
    if (!(c.gamma > 0.0 && c.gamma <= 0.5)) throw ConfigError("/gamma", "must lie in (0, 1/2]");
  }
  if (j.contains("seed")) c.seed = read_unsigned(j["seed"], "/seed", 0);
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("/out", "expected a string");
    c.out = j["out"].get<std::string>();
  }
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array()) throw ConfigError("/alphas", "expected an array");
    for (std::size_t i = 0; i < j["alphas"].size(); ++i) {
      const std::string path = "/alphas/" + std::to_string(i);
      const double a = read_number(j["alphas"][i], path);
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError(path, "must lie in [0, 1]");
      c.alphas.push_back(a);
    }
  }
  if (c.kind == ExperimentKind::GfunCurve && c.alphas.empty()) {
    throw ConfigError("/alphas", "required for gfun-curve");
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ConfigError("/mode", "expected a string");
    const auto mode = j["mode"].get<std::string>();
    if (mode == "uniform-nonedge") {
      c.mode = ExhaustedMode::UniformNonEdge;
    } else if (mode == "stall") {
      c.mode = ExhaustedMode::Stall;
    } else {
      throw ConfigError("/mode", "expected 'uniform-nonedge' or 'stall'");
    }
  }
  if (j.contains("threads")) c.threads = read_unsigned(j["threads"], "/threads", 1);
  if (j.contains("maxVertices")) {
    c.max_vertices = read_unsigned(j["maxVertices"], "/maxVertices", 1);
    if (c.max_vertices > 101) throw ConfigError("/maxVertices", "must be at most 101");
  }

  const bool kernel = c.model && std::holds_alternative<Kernel>(*c.model);
  if (kernel && (c.kind == ExperimentKind::Hitting || c.kind == ExperimentKind::GfunCurve)) {
    throw UnsupportedVariant(to_string(c.kind) + " requires a graphon");
  }
  if (c.model && !kernel && c.kind == ExperimentKind::RkScan) {
    throw UnsupportedVariant("rk-scan requires a kernel");
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j = c.model ? model_to_json(*c.model) : nlohmann::json::object();
  j["kind"] = to_string(c.kind);
  if (!c.n.empty()) j["n"] = c.n;
  j["reps"] = c.reps;
  j["K"] = c.k;
  j["gamma"] = c.gamma;
  j["seed"] = c.seed;
  j["out"] = c.out;
  if (!c.alphas.empty()) j["alphas"] = c.alphas;
  j["mode"] = c.mode == ExhaustedMode::Stall ? "stall" : "uniform-nonedge";
  j["threads"] = c.threads;
  j["maxVertices"] = c.max_vertices;
  return j;
}

ExperimentResult run(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  switch (c.kind) {
    case ExperimentKind::GfunCurve:
      run_gfun(c, result.rows);
      break;
    case ExperimentKind::SproutFuzz:
      run_sprout_fuzz(c, result.rows);
      break;
    default:
      for (std::size_t n : c.n) {
        switch (c.kind) {
          case ExperimentKind::MindegDist:
            run_mindeg(c, n, result.rows);
            break;
          case ExperimentKind::IsoScan:
            run_iso(c, n, result.rows);
            break;
          case ExperimentKind::ConnScan:
          case ExperimentKind::RkScan:
            run_conn(c, n, result.rows);
            break;
          case ExperimentKind::Hitting:
            run_hitting(c, n, result.rows);
            break;
          default:
            break;
        }
      }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result) {
  os << "kind,n,statistic,param,estimate,stderr,reps\n";
  for (const auto& r : result.rows) {
    os << r.kind << ',';
    if (r.n) os << *r.n;
    os << ',' << r.statistic << ',' << r.param << ',' << exact_decimal(r.estimate) << ','
       << exact_decimal(r.stderr_) << ',' << r.reps << '\n';
  }
}

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"n", r.n ? nlohmann::json(*r.n) : nlohmann::json(nullptr)},
                    {"statistic", r.statistic},
                    {"param", r.param},
                    {"estimate", r.estimate},
                    {"stderr", r.stderr_},
                    {"reps", r.reps}});
  }
  return {{"schema", 1},
          {"config", to_json(config)},
          {"wallSeconds", result.wall_seconds},
          {"rows", std::move(rows)}};
}

std::string write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  const std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);
  const auto stem = to_string(config.kind);
  const auto csv_path = dir / (stem + ".csv");
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  write_csv(csv, result);
  std::ofstream summary(dir / (stem + ".summary.json"));
  if (!summary) throw std::runtime_error("cannot write summary in " + dir.string());
  summary << summary_json(config, result).dump(2) << '\n';
  return csv_path.string();
}

}  // namespace graphon_lab
