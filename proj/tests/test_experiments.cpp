#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphon_lab/experiments.hpp"
#include "graphon_lab/sampler.hpp"

using namespace graphon_lab;
using nlohmann::json;

namespace {

std::string csv_of(const ExperimentConfig& c) {
  std::ostringstream os;
  write_csv(os, run(c));
  return os.str();
}

std::string error_path(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

const ResultRow& find_row(const ExperimentResult& r, const std::string& statistic,
                          const std::string& param = "") {
  for (const auto& row : r.rows) {
    if (row.statistic == statistic && row.param == param) return row;
  }
  FAIL("row not found: " << statistic << " " << param);
  return r.rows.front();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("graphon_lab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config: errors carry the offending path") {
  const json base = {{"kind", "iso-scan"},
                     {"graphon", {{"variant", "Constant"}, {"p", 0.5}}},
                     {"n", {100, 200}},
                     {"reps", 10}};
  CHECK_NOTHROW(parse_config(base));
  auto with = [&](const std::string& key, json value) {
    json j = base;
    j[key] = std::move(value);
    return j;
  };
  CHECK(error_path(with("kind", "nope")) == "/kind");
  CHECK(error_path(with("reps", 0)) == "/reps");
  CHECK(error_path(with("reps", -3)) == "/reps");
  CHECK(error_path(with("n", {100, 1})) == "/n/1");
  CHECK(error_path(with("n", json::array())) == "/n");
  CHECK(error_path(with("K", 100)) == "/K");
  CHECK(error_path(with("gamma", 0.7)) == "/gamma");
  CHECK(error_path(with("mode", "sideways")) == "/mode");
  CHECK(error_path(with("threads", 0)) == "/threads");
  CHECK(error_path(with("colour", "blue")) == "/colour");
  CHECK(error_path(with("graphon", {{"variant", "Constant"}, {"p", 2}})) == "/graphon");
  CHECK(error_path(with("graphon", {{"variant", "StepFunction"}, {"blockMeasures", {"1"}}, {"values", "x"}})) ==
        "/graphon/values");
  json no_model = base;
  no_model.erase("graphon");
  CHECK(error_path(no_model) == "/graphon");
  json gf = {{"kind", "gfun-curve"}, {"graphon", {{"variant", "U1"}}}};
  CHECK(error_path(gf) == "/alphas");

  json rk = base;
  rk["kind"] = "rk-scan";
  CHECK_THROWS_AS(parse_config(rk), UnsupportedVariant);
  json hk = {{"kind", "hitting"}, {"kernel", {{"variant", "Constant"}, {"lambda", 1}}}, {"n", 10}};
  CHECK_THROWS_AS(parse_config(hk), UnsupportedVariant);
}

TEST_CASE("iso-scan: dense constant graphon has no isolated vertices") {
  const auto c = parse_config({{"kind", "iso-scan"},
                               {"graphon", {{"variant", "Constant"}, {"p", 0.5}}},
                               {"n", 500},
                               {"reps", 200},
                               {"seed", 1}});
  const auto r = run(c);
  const auto& row = find_row(r, "isolated");
  CHECK(row.estimate == 0.0);
  CHECK(row.stderr_ == 0.0);
  CHECK(row.reps == 200);
  CHECK(row.n == std::optional<std::size_t>(500));
}

TEST_CASE("gfun-curve: U1 ratio is 2/3 below 1/3") {
  json alphas = json::array();
  for (int i = 1; i <= 40; ++i) alphas.push_back(i / 100.0);
  const auto r = run(parse_config({{"kind", "gfun-curve"}, {"graphon", {{"variant", "U1"}}}, {"alphas", alphas}}));
  int checked = 0;
  for (const auto& row : r.rows) {
    if (row.statistic != "g/alpha") continue;
    if (std::stod(row.param) < 1.0 / 3) {
      CHECK(row.estimate == doctest::Approx(2.0 / 3));
      ++checked;
    }
  }
  CHECK(checked == 33);
}

TEST_CASE("hitting: connectivity never precedes minimum degree") {
  const auto r = run(parse_config({{"kind", "hitting"},
                                   {"graphon", {{"variant", "Constant"}, {"p", 1}}},
                                   {"n", 20},
                                   {"K", 1},
                                   {"reps", 50},
                                   {"seed", 2}}));
  CHECK(find_row(r, "hit-ordered", "1").estimate == 1.0);
  const auto& eq = find_row(r, "hit-equal", "1");
  CHECK(eq.stderr_ == doctest::Approx(proportion_stderr(eq.estimate, 50)));
}

TEST_CASE("conn-scan, rk-scan, mindeg-dist and sprout-fuzz produce rows") {
  const auto conn = run(parse_config({{"kind", "conn-scan"},
                                      {"graphon", {{"variant", "U2"}}},
                                      {"n", {30, 60}},
                                      {"K", 2},
                                      {"gamma", 0.2},
                                      {"reps", 20}}));
  CHECK(conn.rows.size() == 8);
  CHECK(find_row(conn, "micro-disconnected", "0.2").reps == 20);

  const auto rk = run(parse_config({{"kind", "rk-scan"},
                                    {"kernel", {{"variant", "Constant"}, {"lambda", 3}}},
                                    {"n", 200},
                                    {"reps", 20}}));
  CHECK(find_row(rk, "connected").estimate > 0.5);
  CHECK(find_row(rk, "isolated").reps == 20);

  const auto md = run(parse_config({{"kind", "mindeg-dist"},
                                    {"graphon", {{"variant", "U1"}}},
                                    {"n", 300},
                                    {"reps", 100}}));
  double total = 0.0;
  for (const auto& row : md.rows) total += row.estimate;
  CHECK(total == doctest::Approx(1.0));

  const auto fuzz = run(parse_config({{"kind", "sprout-fuzz"}, {"reps", 100}, {"maxVertices", 20}}));
  for (const auto& row : fuzz.rows) CHECK(row.estimate == 1.0);
}

TEST_CASE("csv is reproducible and independent of the thread count") {
  json j = {{"kind", "conn-scan"},
            {"graphon", {{"variant", "PowerProduct"}, {"t", 0.5}}},
            {"n", {40, 80}},
            {"K", 2},
            {"reps", 30},
            {"seed", 9}};
  const std::string once = csv_of(parse_config(j));
  CHECK(once == csv_of(parse_config(j)));
  j["threads"] = 4;
  CHECK(once == csv_of(parse_config(j)));
  CHECK(once.rfind("kind,n,statistic,param,estimate,stderr,reps\n", 0) == 0);
  j["seed"] = 10;
  CHECK(once != csv_of(parse_config(j)));
}

TEST_CASE("write_outputs: csv and summary files") {
  const auto dir = scratch_dir("outputs");
  auto c = parse_config({{"kind", "gfun-curve"}, {"graphon", {{"variant", "U2"}}}, {"alphas", {0.1, 0.6}}});
  c.out = dir.string();
  const auto r = run(c);
  const std::string csv = write_outputs(c, r);
  CHECK(std::filesystem::exists(csv));
  std::ifstream summary(dir / "gfun-curve.summary.json");
  const json s = json::parse(summary);
  CHECK(s["rows"].size() == r.rows.size());
  CHECK(s.contains("wallSeconds"));
  CHECK(s["config"]["kind"] == "gfun-curve");
}

#ifdef GRAPHON_LAB_EXE
TEST_CASE("cli: exit codes and outputs") {
  const auto dir = scratch_dir("cli");
  const std::string exe = GRAPHON_LAB_EXE;
  auto sh = [](const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  auto write = [&](const std::string& name, const json& j) {
    std::ofstream(dir / name) << j.dump();
    return (dir / name).string();
  };
  const auto good = write("good.json", {{"graphon", {{"variant", "U1"}}}, {"n", 50}, {"reps", 5}});
  CHECK(sh(exe + " iso-scan --config " + good + " --out " + (dir / "o").string()) == 0);
  CHECK(std::filesystem::exists(dir / "o" / "iso-scan.csv"));

  const auto bad = write("bad.json", {{"graphon", {{"variant", "U1"}}}, {"n", 50}, {"reps", 0}});
  CHECK(sh(exe + " iso-scan --config " + bad) == 2);
  CHECK(sh(exe + " iso-scan --config " + (dir / "missing.json").string()) == 2);
  CHECK(sh(exe + " rk-scan --config " + good) == 2);
  CHECK(sh(exe + " no-such-command") == 2);

  const auto model = write("model.json", {{"graphon", {{"variant", "Constant"}, {"p", 0.5}}}});
  const auto graph = (dir / "g.txt").string();
  CHECK(sh(exe + " sample --model " + model + " -n 30 --seed 4 --out " + graph) == 0);
  std::ifstream in(graph);
  const Graph g = read_edge_list(in);
  CHECK(g == sample_rg(Graphon::constant(0.5), 30, 4).graph);
  std::ifstream side(graph + ".json");
  CHECK(json::parse(side)["seed"] == 4);
}
#endif
