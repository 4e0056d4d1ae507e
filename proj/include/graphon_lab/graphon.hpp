#pragma once

// Graphons and kernels over [0,1] (Lebesgue) or a finite weighted block
// space, together with their analytic functionals.
//
// Points are plain doubles. For the interval variants a point is a real in
// [0,1]; for StepFunction variants a point is a block index stored as an
// integral double. Every value type here is immutable once built.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace graphon_lab {

/// Out-of-domain argument (point, parameter, size).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation not offered for the given variant.
class UnsupportedVariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense symmetric matrix stored row-major.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  /// Throws DomainError if `rows` is ragged or not exactly symmetric.
  explicit SymmetricMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * size_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * size_, size_};
  }
  std::vector<std::vector<double>> rows() const;
  double min_value() const noexcept;
  double max_value() const noexcept;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// Finite probability space of blocks with a symmetric value matrix.
struct BlockModel {
  std::vector<double> measures;
  SymmetricMatrix values;

  std::size_t blocks() const noexcept { return measures.size(); }
  double operator()(double x, double y) const noexcept {
    return values(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  }
  double degree(double x) const noexcept;

  friend bool operator==(const BlockModel&, const BlockModel&) = default;
};

/// Piecewise-constant function on an r x r grid of [0,1]^2. Cell k covers
/// [k/r, (k+1)/r); the point 1 belongs to the last cell.
struct GridModel {
  SymmetricMatrix values;

  std::size_t resolution() const noexcept { return values.size(); }
  std::size_t cell(double x) const noexcept;
  double operator()(double x, double y) const noexcept { return values(cell(x), cell(y)); }
  double degree(double x) const noexcept;

  friend bool operator==(const GridModel&, const GridModel&) = default;
};

struct ConstantGraphon {
  double p;
  double operator()(double, double) const noexcept { return p; }
  double degree(double) const noexcept { return p; }
  friend bool operator==(const ConstantGraphon&, const ConstantGraphon&) = default;
};

struct StepGraphon : BlockModel {};

/// U_t(x,y) = x^t y^t.
struct PowerProductGraphon {
  double t;
  double operator()(double x, double y) const noexcept;
  double degree(double x) const noexcept;
  friend bool operator==(const PowerProductGraphon&, const PowerProductGraphon&) = default;
};

/// 0 on [0,1/2)^2, 1 on [1/2,1]^2, min(1, 3 min(x,y)) on the mixed region.
struct U1Graphon {
  double operator()(double x, double y) const noexcept;
  double degree(double x) const noexcept;
  friend bool operator==(const U1Graphon&, const U1Graphon&) = default;
};

/// Indicator of the quadrilateral x/2 <= y <= 2x (closed half-planes).
struct U2Graphon {
  double operator()(double x, double y) const noexcept;
  double degree(double x) const noexcept;
  friend bool operator==(const U2Graphon&, const U2Graphon&) = default;
};

struct GridGraphon : GridModel {};

class Graphon {
 public:
  using Variant = std::variant<ConstantGraphon, StepGraphon, PowerProductGraphon, U1Graphon,
                               U2Graphon, GridGraphon>;

  static Graphon constant(double p);
  static Graphon step(std::vector<double> block_measures,
                      const std::vector<std::vector<double>>& values);
  static Graphon power_product(double t);
  static Graphon u1();
  static Graphon u2();
  static Graphon grid(const std::vector<std::vector<double>>& values);

  const Variant& variant() const noexcept { return v_; }
  std::string_view name() const noexcept;
  /// True for StepFunction, whose points are block indices.
  bool is_block_space() const noexcept { return std::holds_alternative<StepGraphon>(v_); }

  friend bool operator==(const Graphon&, const Graphon&) = default;

 private:
  explicit Graphon(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct ConstantKernel {
  double lambda;
  double operator()(double, double) const noexcept { return lambda; }
  double degree(double) const noexcept { return lambda; }
  friend bool operator==(const ConstantKernel&, const ConstantKernel&) = default;
};

struct StepKernel : BlockModel {};
struct GridKernel : GridModel {};

class Kernel {
 public:
  using Variant = std::variant<ConstantKernel, StepKernel, GridKernel>;

  static Kernel constant(double lambda);
  static Kernel step(std::vector<double> block_measures,
                     const std::vector<std::vector<double>>& values);
  static Kernel grid(const std::vector<std::vector<double>>& values);

  const Variant& variant() const noexcept { return v_; }
  std::string_view name() const noexcept;
  bool is_block_space() const noexcept { return std::holds_alternative<StepKernel>(v_); }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  explicit Kernel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Point validation shared by the samplers and the analytic functionals.
void check_point(const Graphon& g, double x);
void check_point(const Kernel& k, double x);

double evaluate(const Graphon& g, double x, double y);
double evaluate(const Kernel& k, double x, double y);

/// deg(x) = integral of W(x, y) over y.
double degree(const Graphon& g, double x);
double degree(const Kernel& k, double x);

/// Sum over blocks b in `subset` of measure(b) * W(x, b). StepFunction only.
double degree_restricted(const Graphon& g, std::size_t block, std::span<const std::size_t> subset);

/// g_W(alpha): measure of {x : deg(x) <= alpha}.
double gfun(const Graphon& g, double alpha);

double essinf_degree(const Graphon& g);
double essinf_degree(const Kernel& k);

double edge_density(const Graphon& g);

/// Whether no positive-measure proper subset X has zero W-mass to its
/// complement. Decided structurally for the supported variants.
bool is_connected_graphon(const Graphon& g);

/// h(x) = integral of Gamma(x, y)^2 over y.
double kernel_h(const Kernel& k, double x);

struct ZSet {
  std::vector<std::size_t> blocks;  // sorted
  double measure = 0.0;
  std::size_t rounds = 0;           // number of nonempty layers Z_0, Z_1, ...
  double measure_bound = 0.0;       // 12 c psi / n
  bool hypothesis_holds = false;    // g_W(2c/n) <= 2 c psi / n
};

/// Quarter-degree closure for StepFunction graphons. Starts from the blocks
/// of degree <= 2c/n and repeatedly adds, in simultaneous layers, blocks
/// that send less than a quarter of their degree outside the current set.
/// Every block outside the result keeps at least a quarter of its degree
/// outside it. `psi` only enters the reported measure bound.
ZSet z_construction(const Graphon& g, double c, std::size_t n, double psi);

/// Measure of a set of blocks of a StepFunction graphon.
double block_measure(const Graphon& g, std::span<const std::size_t> blocks);

}  // namespace graphon_lab
