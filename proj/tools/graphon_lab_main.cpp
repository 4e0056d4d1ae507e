#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphon_lab/experiments.hpp"
#include "graphon_lab/graphon_json.hpp"
#include "graphon_lab/sampler.hpp"

namespace gl = graphon_lab;

namespace {

constexpr int kConfigExit = 2;

nlohmann::json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw gl::ConfigError(file, "cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw gl::ConfigError(file, e.what());
  }
}

struct ExperimentArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

int run_experiment(const std::string& kind, const ExperimentArgs& args) {
  nlohmann::json j = load_json(args.config);
  if (j.is_object() && !j.contains("kind")) j["kind"] = kind;
  if (j.is_object() && j["kind"] != kind) {
    throw gl::ConfigError("/kind", "config is for '" + j["kind"].dump() + "', not '" + kind + "'");
  }
  if (args.seed) j["seed"] = *args.seed;
  if (args.out) j["out"] = *args.out;
  if (args.threads) j["threads"] = *args.threads;
  const gl::ExperimentConfig config = gl::parse_config(j);
  const gl::ExperimentResult result = gl::run(config);
  const std::string csv = gl::write_outputs(config, result);
  std::cerr << kind << ": " << result.rows.size() << " rows -> " << csv << " ("
            << result.wall_seconds << " s)\n";
  return 0;
}

int run_sample(const std::string& model_file, std::size_t n, std::uint64_t seed,
               const std::string& out) {
  const gl::Model model = gl::model_from_json(load_json(model_file));
  const gl::SampledGraph s = std::holds_alternative<gl::Graphon>(model)
                                 ? gl::sample_rg(std::get<gl::Graphon>(model), n, seed)
                                 : gl::sample_rk(std::get<gl::Kernel>(model), n, seed);
  std::ofstream edges(out);
  if (!edges) {
    std::cerr << "error: cannot write " << out << '\n';
    return 1;
  }
  gl::write_edge_list(edges, s.graph);
  std::ofstream sidecar(out + ".json");
  sidecar << gl::sidecar_json(s).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and experiments for graphon random graphs"};
  app.require_subcommand(1);

  static const char* kinds[] = {"mindeg-dist", "iso-scan", "conn-scan", "rk-scan",
                                "hitting",     "gfun-curve", "sprout-fuzz"};
  ExperimentArgs exp_args;
  std::string chosen;
  for (const char* kind : kinds) {
    auto* sub = app.add_subcommand(kind, std::string("run the ") + kind + " campaign");
    sub->add_option("--config", exp_args.config, "experiment config (JSON)")->required();
    sub->add_option("--seed", exp_args.seed, "base seed (overrides config)");
    sub->add_option("--out", exp_args.out, "output directory (overrides config)");
    sub->add_option("--threads", exp_args.threads, "worker threads (overrides config)")
        ->check(CLI::PositiveNumber);
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  std::string model_file;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  auto* sample = app.add_subcommand("sample", "sample one graph and write its edge list");
  sample->add_option("--model", model_file, "model description file (JSON)")->required();
  sample->add_option("-n", n, "number of vertices")->required();
  sample->add_option("--seed", seed, "seed")->required();
  sample->add_option("--out", out, "edge list path; the sidecar goes to <out>.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (sample->parsed()) return run_sample(model_file, n, seed, out);
    return run_experiment(chosen, exp_args);
  } catch (const gl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const gl::FormatError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const gl::UnsupportedVariant& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kConfigExit;
  } catch (const gl::DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
