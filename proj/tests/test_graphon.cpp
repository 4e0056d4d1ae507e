#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphon_lab/graphon.hpp"
#include "graphon_lab/graphon_json.hpp"
#include "graphon_lab/rng.hpp"
#include "oracles.hpp"

using namespace graphon_lab;

namespace {

std::vector<Graphon> interval_graphons() {
  return {Graphon::constant(0.3),          Graphon::power_product(0.5), Graphon::power_product(1.0),
          Graphon::power_product(2.0),     Graphon::u1(),               Graphon::u2(),
          Graphon::grid({{0.1, 0.5, 0.0}, {0.5, 1.0, 0.25}, {0.0, 0.25, 0.75}})};
}

Graphon two_block(double a, double b, double c) {
  return Graphon::step({0.5, 0.5}, {{a, b}, {b, c}});
}

}  // namespace

TEST_CASE("evaluate: worked examples") {
  CHECK(evaluate(Graphon::power_product(1.0), 1.0, 1.0) == 1.0);
  CHECK(evaluate(Graphon::u1(), 0.75, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(evaluate(Graphon::u2(), 0.3, 0.5) == 1.0);
}

TEST_CASE("evaluate: U1 and U2 regions") {
  const Graphon u1 = Graphon::u1();
  CHECK(evaluate(u1, 0.2, 0.4) == 0.0);
  CHECK(evaluate(u1, 0.6, 0.9) == 1.0);
  CHECK(evaluate(u1, 0.1, 0.8) == doctest::Approx(0.3));
  CHECK(evaluate(u1, 0.8, 0.4) == 1.0);
  const Graphon u2 = Graphon::u2();
  CHECK(evaluate(u2, 0.5, 0.25) == 1.0);  // boundary y = x/2
  CHECK(evaluate(u2, 0.25, 0.5) == 1.0);  // boundary y = 2x
  CHECK(evaluate(u2, 0.2, 0.5) == 0.0);
  CHECK(evaluate(u2, 0.0, 0.0) == 1.0);
}

TEST_CASE("evaluate: out-of-domain points") {
  CHECK_THROWS_AS(evaluate(Graphon::u1(), -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(evaluate(Graphon::u2(), 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(evaluate(Graphon::constant(0.5), std::nan(""), 0.5), DomainError);
  CHECK_THROWS_AS(evaluate(two_block(0, 1, 1), 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(two_block(0, 1, 1), 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(Kernel::constant(1.0), 0.5, 1.01), DomainError);
}

TEST_CASE("construction: invalid parameters") {
  CHECK_THROWS_AS(Graphon::constant(1.5), DomainError);
  CHECK_THROWS_AS(Graphon::constant(-0.1), DomainError);
  CHECK_THROWS_AS(Graphon::power_product(0.0), DomainError);
  CHECK_THROWS_AS(Graphon::step({0.5, 0.4}, {{1, 0}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(Graphon::step({1.0, 0.0}, {{1, 0}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(Graphon::step({0.5, 0.5}, {{1, 0.2}, {0.3, 1}}), DomainError);
  CHECK_THROWS_AS(Graphon::step({0.5, 0.5}, {{1, 0}, {0}}), DomainError);
  CHECK_THROWS_AS(Graphon::grid({{0.5, 2.0}, {2.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(Kernel::constant(-1.0), DomainError);
  CHECK_THROWS_AS(Kernel::constant(INFINITY), DomainError);
  CHECK_NOTHROW(Kernel::grid({{5.0, 2.0}, {2.0, 0.5}}));
}

TEST_CASE("degree: worked examples") {
  CHECK(degree(Graphon::power_product(2.0), 0.5) == doctest::Approx(0.25 / 3));
  CHECK(degree(Graphon::u1(), 0.2) == doctest::Approx(0.3));
  CHECK(degree(Graphon::constant(0.7), 0.123) == 0.7);
  CHECK(degree(Graphon::u1(), 0.4) == doctest::Approx(0.5));
  CHECK(degree(Graphon::u1(), 0.7) == doctest::Approx(5.0 / 6));
  CHECK(degree(Graphon::u2(), 0.25) == doctest::Approx(0.375));
  CHECK(degree(Graphon::u2(), 0.8) == doctest::Approx(0.6));
}

TEST_CASE("degree_restricted: worked examples") {
  const Graphon g = Graphon::step({0.5, 0.5}, {{0, 1}, {1, 1}});
  const std::vector<std::size_t> one{1};
  const std::vector<std::size_t> none{};
  const std::vector<std::size_t> all{0, 1};
  CHECK(degree_restricted(g, 0, one) == doctest::Approx(0.5));
  CHECK(degree_restricted(g, 0, none) == 0.0);
  CHECK(degree_restricted(g, 1, all) == doctest::Approx(degree(g, 1.0)));
  CHECK_THROWS_AS(degree_restricted(Graphon::u1(), 0, one), UnsupportedVariant);
}

TEST_CASE("gfun: worked examples and closed forms") {
  CHECK(gfun(Graphon::u1(), 0.1) == doctest::Approx(0.2 / 3));
  CHECK(gfun(Graphon::constant(0.5), 0.4) == 0.0);
  CHECK(gfun(Graphon::constant(0.5), 0.5) == 1.0);
  CHECK(gfun(Graphon::power_product(2.0), 1.0 / 12) == doctest::Approx(0.5));
  CHECK(gfun(Graphon::u1(), 0.5) == doctest::Approx(0.5));
  CHECK(gfun(Graphon::u1(), 0.8) == doctest::Approx(0.5));
  CHECK(gfun(Graphon::u1(), 5.0 / 6) == 1.0);
  CHECK(gfun(Graphon::u2(), 0.3) == doctest::Approx(0.2));
  CHECK(gfun(Graphon::u2(), 0.55) == doctest::Approx(0.55 * 2 / 3 + 0.1));
  CHECK_THROWS_AS(gfun(Graphon::u1(), -0.01), DomainError);
  CHECK_THROWS_AS(gfun(Graphon::u1(), 1.01), DomainError);
}

TEST_CASE("gfun: monotone with gfun(1) = 1") {
  for (const Graphon& g : interval_graphons()) {
    CAPTURE(g.name());
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double v = gfun(g, i / 1000.0);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(gfun(g, 1.0) == 1.0);
  }
  const Graphon s = Graphon::step({0.25, 0.75}, {{0.1, 0.2}, {0.2, 0.9}});
  CHECK(gfun(s, 0.17) == 0.0);
  CHECK(gfun(s, 0.1751) == doctest::Approx(0.25));
  CHECK(gfun(s, 1.0) == 1.0);
}

TEST_CASE("essinf_degree: worked examples") {
  CHECK(essinf_degree(Graphon::constant(0.42)) == 0.42);
  CHECK(essinf_degree(Graphon::power_product(1.0)) == 0.0);
  CHECK(essinf_degree(two_block(0.2, 0.4, 0.8)) == doctest::Approx(0.3));
  CHECK(essinf_degree(Kernel::constant(2.0)) == 2.0);
  CHECK(essinf_degree(Kernel::step({0.5, 0.5}, {{1, 3}, {3, 1}})) == doctest::Approx(2.0));
}

TEST_CASE("edge_density") {
  CHECK(edge_density(Graphon::constant(0.3)) == 0.3);
  CHECK(edge_density(Graphon::power_product(1.0)) == doctest::Approx(0.25));
  CHECK(edge_density(Graphon::power_product(2.0)) == doctest::Approx(1.0 / 9));
  CHECK(edge_density(Graphon::u1()) == doctest::Approx(7.0 / 12));
  // Area of the quadrilateral with corners (0,0), (1,1/2), (1,1), (1/2,1).
  CHECK(edge_density(Graphon::u2()) == doctest::Approx(0.5));
  CHECK(edge_density(two_block(0.2, 0.4, 0.8)) == doctest::Approx(0.45));
}

TEST_CASE("is_connected_graphon: worked examples") {
  CHECK_FALSE(is_connected_graphon(two_block(1, 0, 1)));
  CHECK(is_connected_graphon(Graphon::constant(0.3)));
  CHECK_FALSE(is_connected_graphon(Graphon::constant(0.0)));
  CHECK(is_connected_graphon(
      Graphon::step({0.2, 0.3, 0.5}, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}})));
  CHECK(is_connected_graphon(Graphon::u1()));
  CHECK(is_connected_graphon(Graphon::u2()));
  CHECK(is_connected_graphon(Graphon::power_product(3.0)));
  CHECK_FALSE(is_connected_graphon(Graphon::grid({{1, 0}, {0, 1}})));
  CHECK(is_connected_graphon(Graphon::grid({{0, 1}, {1, 0}})));
}

TEST_CASE("kernel_h: worked examples") {
  CHECK(kernel_h(Kernel::constant(2.0), 0.3) == 4.0);
  CHECK(kernel_h(Kernel::step({0.5, 0.5}, {{1, 3}, {3, 1}}), 0.0) == doctest::Approx(5.0));
  CHECK(kernel_h(Kernel::constant(0.0), 0.9) == 0.0);
  CHECK(kernel_h(Kernel::grid({{1, 3}, {3, 1}}), 0.75) == doctest::Approx(5.0));
}

TEST_CASE("symmetry: 10^6 random pairs per variant, exact") {
  CounterRng rng(7, Stage::Fuzz, 1);
  auto graphons = interval_graphons();
  for (const Graphon& g : graphons) {
    CAPTURE(g.name());
    std::size_t bad = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      const double v = evaluate(g, x, y);
      if (v != evaluate(g, y, x) || v < 0.0 || v > 1.0) ++bad;
    }
    CHECK(bad == 0);
  }
  const Graphon s = Graphon::step({0.1, 0.2, 0.7}, {{0.1, 0.2, 0.3}, {0.2, 0.5, 0.6}, {0.3, 0.6, 0.9}});
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(evaluate(s, a, b) == evaluate(s, b, a));
  }
}

TEST_CASE("quadrature: degree within 1e-4 of a 10^4-cell midpoint rule") {
  for (const Graphon& g : interval_graphons()) {
    CAPTURE(g.name());
    for (double x : {0.0, 0.05, 0.2, 1.0 / 3, 0.45, 0.5, 0.61, 0.9, 1.0}) {
      CAPTURE(x);
      const double q = oracle::midpoint([&](double y) { return evaluate(g, x, y); }, 10'000);
      CHECK(std::abs(degree(g, x) - q) <= 1e-4 + 1e-12);
      CHECK(degree(g, x) >= 0.0);
      CHECK(degree(g, x) <= 1.0);
    }
  }
}

TEST_CASE("quadrature: edge density within 1e-4 of a 2-D midpoint rule") {
  for (const Graphon& g : interval_graphons()) {
    CAPTURE(g.name());
    const std::size_t m = 6000;
    const double q = oracle::midpoint(
        [&](double x) { return oracle::midpoint([&](double y) { return evaluate(g, x, y); }, m); }, m);
    CHECK(std::abs(edge_density(g) - q) <= 1e-4);
  }
}

TEST_CASE("gfun: agrees with Monte Carlo within 3 standard errors") {
  CounterRng rng(11, Stage::Fuzz, 2);
  for (const Graphon& g : interval_graphons()) {
    CAPTURE(g.name());
    std::vector<double> degs(100'000);
    for (auto& d : degs) d = degree(g, rng.uniform());
    std::sort(degs.begin(), degs.end());
    for (int i = 0; i < 20; ++i) {
      const double a = rng.uniform();
      const double exact = gfun(g, a);
      const double est = oracle::empirical_gfun(degs, a);
      const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(degs.size()));
      CAPTURE(a);
      if (se == 0.0) {
        CHECK(est == exact);
      } else {
        CHECK(std::abs(est - exact) <= 3 * se);
      }
    }
  }
}

TEST_CASE("z_construction: worked examples") {
  const std::size_t n = 100;
  const double c = 1.0;
  SUBCASE("no low-degree blocks and no leakage") {
    const Graphon g = Graphon::step({0.5, 0.5}, {{0.9, 0.8}, {0.8, 0.9}});
    const ZSet z = z_construction(g, c, n, 1.0);
    CHECK(z.blocks.empty());
    CHECK(z.measure == 0.0);
    CHECK(z.rounds == 0);
  }
  SUBCASE("single light block") {
    const double eps = 1e-3;
    const Graphon g = Graphon::step({1.0 / n, 1.0 - 1.0 / n}, {{0, eps}, {eps, 1}});
    const ZSet z = z_construction(g, c, n, 1.0);
    CHECK(z.blocks == std::vector<std::size_t>{0});
    CHECK(z.measure == doctest::Approx(1.0 / n));
  }
  SUBCASE("second layer") {
    // Block 1 sends most of its degree into the light block 0.
    const Graphon g = Graphon::step({0.5, 0.01, 0.49}, {{0, 1, 0}, {1, 0, 0.01}, {0, 0.01, 1}});
    const ZSet z = z_construction(g, c, n, 1.0);
    CHECK(z.blocks == std::vector<std::size_t>{0, 1});
    CHECK(z.rounds == 2);
  }
  CHECK_THROWS_AS(z_construction(Graphon::u1(), c, n, 1.0), UnsupportedVariant);
  CHECK_THROWS_AS(z_construction(Graphon::step({1.0}, {{0.5}}), 0.5, n, 1.0), DomainError);
}

TEST_CASE("z_construction: properties on random step graphons") {
  CounterRng rng(5, Stage::Fuzz, 3);
  std::size_t hypothesis_cases = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 1 + rng.below(8);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = 0.05 + rng.uniform());
    for (auto& x : w) x /= total;
    // Renormalise so the measures sum to 1 within rounding.
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) acc += w[i];
    w[k - 1] = 1.0 - acc;
    std::vector<std::vector<double>> v(k, std::vector<double>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a; b < k; ++b) {
        const double r = rng.uniform();
        v[a][b] = v[b][a] = r < 0.3 ? 0.0 : (r < 0.5 ? 0.01 * rng.uniform() : rng.uniform());
      }
    }
    const Graphon g = Graphon::step(w, v);
    const std::size_t n = 10 + rng.below(200);
    const double c = 1.0 + 3.0 * rng.uniform();
    const double psi = 0.5 + 4.0 * rng.uniform();
    const ZSet z = z_construction(g, c, n, psi);
    std::vector<std::size_t> outside;
    for (std::size_t b = 0; b < k; ++b) {
      if (!std::binary_search(z.blocks.begin(), z.blocks.end(), b)) outside.push_back(b);
    }
    for (std::size_t b = 0; b < k; ++b) {
      const double d = degree(g, static_cast<double>(b));
      const bool in_z = std::binary_search(z.blocks.begin(), z.blocks.end(), b);
      if (d <= 2.0 * c / static_cast<double>(n)) CHECK(in_z);  // (a)
      if (!in_z) CHECK(degree_restricted(g, b, outside) >= 0.25 * d);  // (c)
    }
    if (z.hypothesis_holds) {
      ++hypothesis_cases;
      CHECK(z.measure < z.measure_bound);  // (b)
    }
  }
  CHECK(hypothesis_cases > 0);
}

TEST_CASE("json: round trip and error paths") {
  const std::vector<Graphon> all = {
      Graphon::constant(0.3), Graphon::power_product(0.1), Graphon::u1(), Graphon::u2(),
      Graphon::step({0.1, 0.9}, {{0.1, 0.7}, {0.7, 1.0 / 3}}),
      Graphon::grid({{0.2, 0.1}, {0.1, 0.3}})};
  for (const Graphon& g : all) {
    CHECK(graphon_from_json(to_json(g)) == g);
    CHECK(graphon_from_json(nlohmann::json::parse(to_json(g).dump())) == g);
  }
  const Kernel k = Kernel::step({0.25, 0.75}, {{4, 0.5}, {0.5, 2}});
  CHECK(kernel_from_json(to_json(k)) == k);
  CHECK(kernel_from_json(to_json(Kernel::constant(2))) == Kernel::constant(2));

  auto path_of = [](const nlohmann::json& j) {
    try {
      graphon_from_json(j);
    } catch (const FormatError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  CHECK(path_of({{"variant", "Nope"}}) == "/variant");
  CHECK(path_of({{"variant", "Constant"}}) == "/p");
  CHECK(path_of({{"variant", "StepFunction"}, {"blockMeasures", {"0.5", "x"}}, {"values", {{"1", "0"}, {"0", "1"}}}}) ==
        "/blockMeasures/1");
  CHECK_THROWS_AS(kernel_from_json({{"variant", "U1"}}), FormatError);
}
