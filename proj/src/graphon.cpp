#include "graphon_lab/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace graphon_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::vector<double> checked_measures(std::vector<double> measures, std::size_t expected) {
  require(!measures.empty(), "block measures must be nonempty");
  require(measures.size() == expected, "block measures and value matrix disagree in size");
  double total = 0.0;
  for (double m : measures) {
    require(std::isfinite(m) && m > 0.0, "block measures must be strictly positive");
    total += m;
  }
  require(std::abs(total - 1.0) <= 1e-12, "block measures must sum to 1");
  return measures;
}

void check_probabilities(const SymmetricMatrix& m) {
  require(m.size() > 0, "value matrix must be nonempty");
  require(m.min_value() >= 0.0 && m.max_value() <= 1.0, "graphon values must lie in [0,1]");
}

void check_nonnegative(const SymmetricMatrix& m) {
  require(m.size() > 0, "value matrix must be nonempty");
  require(m.min_value() >= 0.0 && std::isfinite(m.max_value()),
          "kernel values must be finite and nonnegative");
}

void check_interval_point(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("point " + std::to_string(x) + " is outside [0,1]");
  }
}

void check_block_point(const BlockModel& b, double x) {
  if (!(x >= 0.0 && x < static_cast<double>(b.blocks()) && x == std::floor(x))) {
    throw DomainError("point " + std::to_string(x) + " is not a block index below " +
                      std::to_string(b.blocks()));
  }
}

const StepGraphon& as_step(const Graphon& g, const char* op) {
  const auto* s = std::get_if<StepGraphon>(&g.variant());
  if (s == nullptr) {
    throw UnsupportedVariant(std::string(op) + " requires a StepFunction graphon, got " +
                             std::string(g.name()));
  }
  return *s;
}

// Connectivity of the block graph, where blocks a != b are joined when
// their value is positive. A single block stands for an interval, which is
// split by any X unless its own value is positive.
bool block_graph_connected(const SymmetricMatrix& v) {
  const std::size_t k = v.size();
  if (k == 1) return v(0, 0) > 0.0;
  std::vector<char> seen(k, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < k; ++b) {
      if (!seen[b] && b != a && v(a, b) > 0.0) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached == k;
}

}  // namespace

// ---------------------------------------------------------------------------
// SymmetricMatrix

SymmetricMatrix::SymmetricMatrix(const std::vector<std::vector<double>>& rows)
    : size_(rows.size()), data_(rows.size() * rows.size()) {
  for (std::size_t i = 0; i < size_; ++i) {
    require(rows[i].size() == size_, "value matrix must be square");
    std::copy(rows[i].begin(), rows[i].end(), data_.begin() + static_cast<std::ptrdiff_t>(i * size_));
  }
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      require((*this)(i, j) == (*this)(j, i), "value matrix must be exactly symmetric");
    }
  }
  for (double x : data_) require(!std::isnan(x), "value matrix contains NaN");
}

std::vector<std::vector<double>> SymmetricMatrix::rows() const {
  std::vector<std::vector<double>> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

double SymmetricMatrix::min_value() const noexcept {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double SymmetricMatrix::max_value() const noexcept {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

// ---------------------------------------------------------------------------
// Variant members

double BlockModel::degree(double x) const noexcept {
  const auto r = values.row(static_cast<std::size_t>(x));
  double d = 0.0;
  for (std::size_t b = 0; b < measures.size(); ++b) d += measures[b] * r[b];
  return d;
}

std::size_t GridModel::cell(double x) const noexcept {
  const auto r = resolution();
  const auto c = static_cast<std::size_t>(x * static_cast<double>(r));
  return std::min(c, r - 1);
}

double GridModel::degree(double x) const noexcept {
  const auto r = values.row(cell(x));
  return std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(resolution());
}

double PowerProductGraphon::operator()(double x, double y) const noexcept {
  // Factored so that samplers can precompute x^t per vertex bit-exactly.
  return std::pow(x, t) * std::pow(y, t);
}

double PowerProductGraphon::degree(double x) const noexcept { return std::pow(x, t) / (t + 1.0); }

double U1Graphon::operator()(double x, double y) const noexcept {
  const bool lo_x = x < 0.5;
  const bool lo_y = y < 0.5;
  if (lo_x && lo_y) return 0.0;
  if (!lo_x && !lo_y) return 1.0;
  return std::min(1.0, 3.0 * std::min(x, y));
}

double U1Graphon::degree(double x) const noexcept {
  // x < 1/2: only [1/2,1] contributes, with value min(1, 3x) on length 1/2.
  // x >= 1/2: integral of min(1,3y) over [0,1/2) is 1/3, plus 1/2.
  if (x < 0.5) return 0.5 * std::min(1.0, 3.0 * x);
  return 5.0 / 6.0;
}

double U2Graphon::operator()(double x, double y) const noexcept {
  return (0.5 * x <= y && y <= 2.0 * x) ? 1.0 : 0.0;
}

double U2Graphon::degree(double x) const noexcept { return std::min(1.0, 2.0 * x) - 0.5 * x; }

// ---------------------------------------------------------------------------
// Factories

Graphon Graphon::constant(double p) {
  require(p >= 0.0 && p <= 1.0, "constant graphon value must lie in [0,1]");
  return Graphon(ConstantGraphon{p});
}

Graphon Graphon::step(std::vector<double> block_measures,
                      const std::vector<std::vector<double>>& values) {
  SymmetricMatrix m(values);
  check_probabilities(m);
  StepGraphon s;
  s.measures = checked_measures(std::move(block_measures), m.size());
  s.values = std::move(m);
  return Graphon(std::move(s));
}

Graphon Graphon::power_product(double t) {
  require(std::isfinite(t) && t > 0.0, "power-product exponent must be positive");
  return Graphon(PowerProductGraphon{t});
}

Graphon Graphon::u1() { return Graphon(U1Graphon{}); }
Graphon Graphon::u2() { return Graphon(U2Graphon{}); }

Graphon Graphon::grid(const std::vector<std::vector<double>>& values) {
  SymmetricMatrix m(values);
  check_probabilities(m);
  GridGraphon gg;
  gg.values = std::move(m);
  return Graphon(std::move(gg));
}

std::string_view Graphon::name() const noexcept {
  static constexpr std::string_view names[] = {"Constant", "StepFunction", "PowerProduct",
                                               "U1",       "U2",           "Grid"};
  return names[v_.index()];
}

Kernel Kernel::constant(double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0, "kernel constant must be finite and nonnegative");
  return Kernel(ConstantKernel{lambda});
}

Kernel Kernel::step(std::vector<double> block_measures,
                    const std::vector<std::vector<double>>& values) {
  SymmetricMatrix m(values);
  check_nonnegative(m);
  StepKernel s;
  s.measures = checked_measures(std::move(block_measures), m.size());
  s.values = std::move(m);
  return Kernel(std::move(s));
}

Kernel Kernel::grid(const std::vector<std::vector<double>>& values) {
  SymmetricMatrix m(values);
  check_nonnegative(m);
  GridKernel gk;
  gk.values = std::move(m);
  return Kernel(std::move(gk));
}

std::string_view Kernel::name() const noexcept {
  static constexpr std::string_view names[] = {"Constant", "StepFunction", "Grid"};
  return names[v_.index()];
}

// ---------------------------------------------------------------------------
// Functionals

void check_point(const Graphon& g, double x) {
  if (const auto* s = std::get_if<StepGraphon>(&g.variant())) {
    check_block_point(*s, x);
  } else {
    check_interval_point(x);
  }
}

void check_point(const Kernel& k, double x) {
  if (const auto* s = std::get_if<StepKernel>(&k.variant())) {
    check_block_point(*s, x);
  } else {
    check_interval_point(x);
  }
}

double evaluate(const Graphon& g, double x, double y) {
  check_point(g, x);
  check_point(g, y);
  return std::visit([&](const auto& w) { return w(x, y); }, g.variant());
}

double evaluate(const Kernel& k, double x, double y) {
  check_point(k, x);
  check_point(k, y);
  return std::visit([&](const auto& w) { return w(x, y); }, k.variant());
}

double degree(const Graphon& g, double x) {
  check_point(g, x);
  return std::visit([&](const auto& w) { return w.degree(x); }, g.variant());
}

double degree(const Kernel& k, double x) {
  check_point(k, x);
  return std::visit([&](const auto& w) { return w.degree(x); }, k.variant());
}

double degree_restricted(const Graphon& g, std::size_t block,
                         std::span<const std::size_t> subset) {
  const auto& s = as_step(g, "degree_restricted");
  check_block_point(s, static_cast<double>(block));
  double d = 0.0;
  for (std::size_t b : subset) {
    check_block_point(s, static_cast<double>(b));
    d += s.measures[b] * s.values(block, b);
  }
  return d;
}

double gfun(const Graphon& g, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("gfun: alpha must lie in [0,1]");
  return std::visit(
      Overloaded{
          [&](const ConstantGraphon& w) { return alpha >= w.p ? 1.0 : 0.0; },
          [&](const StepGraphon& w) {
            double total = 0.0;
            for (std::size_t b = 0; b < w.blocks(); ++b) {
              if (w.degree(static_cast<double>(b)) <= alpha) total += w.measures[b];
            }
            return total;
          },
          [&](const PowerProductGraphon& w) {
            // x^t / (t+1) <= alpha  <=>  x <= ((t+1) alpha)^(1/t)
            return std::min(1.0, std::pow((w.t + 1.0) * alpha, 1.0 / w.t));
          },
          [&](const U1Graphon&) {
            if (alpha < 0.5) return 2.0 * alpha / 3.0;
            if (alpha < 5.0 / 6.0) return 0.5;
            return 1.0;
          },
          [&](const U2Graphon&) {
            // deg = 1.5x on [0,1/2], 1 - x/2 on (1/2,1].
            const double low = std::min(0.5, 2.0 * alpha / 3.0);
            double high = 0.0;
            if (alpha >= 0.75) {
              high = 0.5;
            } else if (alpha >= 0.5) {
              high = 2.0 * alpha - 1.0;
            }
            return low + high;
          },
          [&](const GridGraphon& w) {
            const std::size_t r = w.resolution();
            std::size_t count = 0;
            for (std::size_t c = 0; c < r; ++c) {
              const auto row = w.values.row(c);
              if (std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(r) <= alpha) {
                ++count;
              }
            }
            return static_cast<double>(count) / static_cast<double>(r);
          },
      },
      g.variant());
}

namespace {

double block_min_degree(const BlockModel& b) {
  double best = b.degree(0.0);
  for (std::size_t i = 1; i < b.blocks(); ++i) best = std::min(best, b.degree(static_cast<double>(i)));
  return best;
}

double grid_min_degree(const GridModel& m) {
  const std::size_t r = m.resolution();
  double best = 0.0;
  for (std::size_t c = 0; c < r; ++c) {
    const auto row = m.values.row(c);
    const double d = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(r);
    best = (c == 0) ? d : std::min(best, d);
  }
  return best;
}

}  // namespace

double essinf_degree(const Graphon& g) {
  return std::visit(Overloaded{
                        [](const ConstantGraphon& w) { return w.p; },
                        [](const StepGraphon& w) { return block_min_degree(w); },
                        [](const PowerProductGraphon&) { return 0.0; },
                        [](const U1Graphon&) { return 0.0; },
                        [](const U2Graphon&) { return 0.0; },
                        [](const GridGraphon& w) { return grid_min_degree(w); },
                    },
                    g.variant());
}

double essinf_degree(const Kernel& k) {
  return std::visit(Overloaded{
                        [](const ConstantKernel& w) { return w.lambda; },
                        [](const StepKernel& w) { return block_min_degree(w); },
                        [](const GridKernel& w) { return grid_min_degree(w); },
                    },
                    k.variant());
}

double edge_density(const Graphon& g) {
  return std::visit(
      Overloaded{
          [](const ConstantGraphon& w) { return w.p; },
          [](const StepGraphon& w) {
            double total = 0.0;
            for (std::size_t a = 0; a < w.blocks(); ++a) {
              total += w.measures[a] * w.degree(static_cast<double>(a));
            }
            return total;
          },
          [](const PowerProductGraphon& w) { return 1.0 / ((w.t + 1.0) * (w.t + 1.0)); },
          [](const U1Graphon&) { return 7.0 / 12.0; },
          [](const U2Graphon&) { return 0.5; },
          [](const GridGraphon& w) {
            const std::size_t r = w.resolution();
            double total = 0.0;
            for (std::size_t c = 0; c < r; ++c) {
              const auto row = w.values.row(c);
              total += std::accumulate(row.begin(), row.end(), 0.0);
            }
            return total / static_cast<double>(r * r);
          },
      },
      g.variant());
}

bool is_connected_graphon(const Graphon& g) {
  return std::visit(Overloaded{
                        [](const ConstantGraphon& w) { return w.p > 0.0; },
                        [](const StepGraphon& w) { return block_graph_connected(w.values); },
                        // Positive almost everywhere on (0,1]^2.
                        [](const PowerProductGraphon&) { return true; },
                        // [1/2,1]^2 is complete and every x > 0 below 1/2
                        // has positive value towards it.
                        [](const U1Graphon&) { return true; },
                        // Every X = [0,a) meets its complement in the band
                        // a <= y <= 2x, which has positive area.
                        [](const U2Graphon&) { return true; },
                        [](const GridGraphon& w) { return block_graph_connected(w.values); },
                    },
                    g.variant());
}

double kernel_h(const Kernel& k, double x) {
  check_point(k, x);
  return std::visit(Overloaded{
                        [](const ConstantKernel& w) { return w.lambda * w.lambda; },
                        [&](const StepKernel& w) {
                          const auto row = w.values.row(static_cast<std::size_t>(x));
                          double h = 0.0;
                          for (std::size_t b = 0; b < w.blocks(); ++b) {
                            h += w.measures[b] * row[b] * row[b];
                          }
                          return h;
                        },
                        [&](const GridKernel& w) {
                          const auto row = w.values.row(w.cell(x));
                          double h = 0.0;
                          for (double v : row) h += v * v;
                          return h / static_cast<double>(w.resolution());
                        },
                    },
                    k.variant());
}

double block_measure(const Graphon& g, std::span<const std::size_t> blocks) {
  const auto& s = as_step(g, "block_measure");
  double total = 0.0;
  for (std::size_t b : blocks) {
    check_block_point(s, static_cast<double>(b));
    total += s.measures[b];
  }
  return total;
}

}  // namespace graphon_lab
