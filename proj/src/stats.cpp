#include "graphon_lab/stats.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "graphon_lab/graphon.hpp"
#include "graphon_lab/rng.hpp"

namespace graphon_lab {

double binomial_tail_bound(std::uint64_t n, double p, double r) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_tail_bound: p must lie in [0, 1]");
  const double mean = static_cast<double>(n) * p;
  if (!(r >= 0.0) || !(r < mean)) {
    throw DomainError("binomial_tail_bound: need 0 <= r < n p");
  }
  const double gap = mean - r;
  return (static_cast<double>(n) - r) * p / (gap * gap);
}

mpq_class binomial_tail_bound_exact(std::uint64_t n, const mpq_class& p, const mpq_class& r) {
  if (sgn(p) < 0 || p > 1) throw DomainError("binomial_tail_bound: p must lie in [0, 1]");
  const mpq_class nn(mpz_class(std::to_string(n)));
  const mpq_class gap = nn * p - r;
  if (sgn(r) < 0 || sgn(gap) <= 0) throw DomainError("binomial_tail_bound: need 0 <= r < n p");
  mpq_class out = (nn - r) * p / (gap * gap);
  out.canonicalize();
  return out;
}

mpq_class binomial_cdf_exact(std::uint64_t n, const mpq_class& p, std::uint64_t r) {
  if (n > 64) throw DomainError("binomial_cdf_exact: n must be at most 64");
  if (r > n) throw DomainError("binomial_cdf_exact: r must lie in [0, n]");
  if (sgn(p) < 0 || p > 1) throw DomainError("binomial_cdf_exact: p must lie in [0, 1]");
  const mpq_class q = 1 - p;
  mpq_class sum = 0;
  for (std::uint64_t k = 0; k <= r; ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    mpq_class term(c);
    for (std::uint64_t i = 0; i < k; ++i) term *= p;
    for (std::uint64_t i = k; i < n; ++i) term *= q;
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

std::vector<double> ppp_sample(double intensity, double horizon, std::uint64_t seed) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw DomainError("ppp_sample: intensity must be positive");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("ppp_sample: horizon must be positive and finite");
  }
  CounterRng rng(seed, Stage::PointProcess, 0, 0);
  std::vector<double> points;
  for (double s = rng.exponential(intensity); s <= horizon; s += rng.exponential(intensity)) {
    points.push_back(s);
  }
  return points;
}

void EmpiricalDistribution::add(std::uint64_t outcome, std::uint64_t count) {
  if (count == 0) return;
  counts_[outcome] += count;
  total_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
  for (const auto& [k, c] : other.counts_) add(k, c);
}

std::uint64_t EmpiricalDistribution::count(std::uint64_t outcome) const {
  auto it = counts_.find(outcome);
  return it == counts_.end() ? 0 : it->second;
}

double EmpiricalDistribution::probability(std::uint64_t outcome) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(count(outcome)) / static_cast<double>(total_);
}

std::uint64_t EmpiricalDistribution::max_outcome() const {
  if (counts_.empty()) throw DomainError("EmpiricalDistribution: no observations");
  return counts_.rbegin()->first;
}

void EmpiricalDistribution::write_csv(std::ostream& os) const {
  os << "outcome,count\n";
  for (const auto& [k, c] : counts_) os << k << ',' << c << '\n';
}

EmpiricalDistribution EmpiricalDistribution::read_csv(std::istream& is) {
  EmpiricalDistribution d;
  std::string line;
  if (!std::getline(is, line) || line != "outcome,count") {
    throw DomainError("EmpiricalDistribution: missing 'outcome,count' header");
  }
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint64_t k = 0;
    std::uint64_t c = 0;
    char comma = 0;
    if (!(ss >> k >> comma >> c) || comma != ',' || !(ss >> std::ws).eof()) {
      throw DomainError("EmpiricalDistribution: bad row " + std::to_string(row));
    }
    d.add(k, c);
  }
  return d;
}

std::uint64_t mindeg_oracle_u1_draw(std::uint64_t seed, std::uint64_t r) {
  constexpr double kIntensity = 2.0 / 3.0;
  constexpr double kHorizon = 60.0;
  CounterRng rng(seed, Stage::PointProcess, r, 1);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (double s = rng.exponential(kIntensity); s <= kHorizon && best > 0;
       s += rng.exponential(kIntensity)) {
    best = std::min(best, rng.poisson_capped(s, best));
  }
  return best;
}

std::uint64_t mindeg_oracle_u2_draw(std::uint64_t seed, std::uint64_t r) {
  CounterRng rng(seed, Stage::PointProcess, r, 2);
  const double first = rng.exponential(1.0);
  std::uint64_t z = 0;
  for (double s = first + rng.exponential(1.0); s < 2.0 * first; s += rng.exponential(1.0)) ++z;
  return z;
}

EmpiricalDistribution mindeg_oracle_u1(std::uint64_t reps, std::uint64_t seed) {
  if (reps == 0) throw DomainError("mindeg_oracle_u1: reps must be positive");
  EmpiricalDistribution d;
  for (std::uint64_t r = 0; r < reps; ++r) d.add(mindeg_oracle_u1_draw(seed, r));
  return d;
}

EmpiricalDistribution mindeg_oracle_u2(std::uint64_t reps, std::uint64_t seed) {
  if (reps == 0) throw DomainError("mindeg_oracle_u2: reps must be positive");
  EmpiricalDistribution d;
  for (std::uint64_t r = 0; r < reps; ++r) d.add(mindeg_oracle_u2_draw(seed, r));
  return d;
}

double geometric_pmf(double p, std::uint64_t k) {
  return p * std::pow(1.0 - p, static_cast<double>(k));
}

double tv_distance(const EmpiricalDistribution& emp, double geometric_p, std::uint64_t support_cap) {
  if (!(geometric_p > 0.0 && geometric_p <= 1.0)) {
    throw DomainError("tv_distance: geometric parameter must lie in (0, 1]");
  }
  if (emp.total() == 0) throw DomainError("tv_distance: empty distribution");
  const std::uint64_t last = std::max(support_cap, emp.max_outcome());
  double sum = 0.0;
  for (std::uint64_t k = 0; k <= last; ++k) {
    sum += std::abs(emp.probability(k) - geometric_pmf(geometric_p, k));
  }
  sum += std::pow(1.0 - geometric_p, static_cast<double>(last + 1));
  return 0.5 * sum;
}

}  // namespace graphon_lab
