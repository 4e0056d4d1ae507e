#pragma once

// Binomial tail bounds, Poisson point processes and the point-process
// oracles for the minimum degree of RG(n, U1) and RG(n, U2).
//
// U1 oracle: Z = min_j Y_j where s_1 < s_2 < ... is a Poisson process of
// intensity 2/3 on [0, 60] and Y_j ~ Poisson(s_j) independently. Points
// beyond 60 are dropped. For one of them to matter for P[Z >= k], k <= 12,
// a Poisson(60) variable would have to fall below 12, which has
// probability below 1e-15.
//
// U2 oracle: with a unit-intensity process, Z = #{i > 1 : s_i < 2 s_1}.
// The walk stops at the first point past 2 s_1, so no horizon is needed.
//
// The two laws are Geometric(1 - exp(-2/3)) and Geometric(1/2) on
// {0, 1, ...}. Text elsewhere also mentions 1 - exp(-1.5) for U1; the
// thinning argument (the number of j with Y_j <= k - 1 is Poisson(2k/3))
// gives P[Z >= k] = exp(-2k/3), which is what the oracle reproduces.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace graphon_lab {

/// (n - r) p / (n p - r)^2, an upper bound on P[Bin(n, p) <= r].
/// Throws DomainError unless 0 <= r < n p and p lies in [0, 1].
double binomial_tail_bound(std::uint64_t n, double p, double r);
mpq_class binomial_tail_bound_exact(std::uint64_t n, const mpq_class& p, const mpq_class& r);

/// P[Bin(n, p) <= r] exactly. Requires n <= 64, 0 <= r <= n, p in [0, 1].
mpq_class binomial_cdf_exact(std::uint64_t n, const mpq_class& p, std::uint64_t r);

/// Points of a homogeneous Poisson process on [0, horizon], ascending.
std::vector<double> ppp_sample(double intensity, double horizon, std::uint64_t seed);

class EmpiricalDistribution {
 public:
  void add(std::uint64_t outcome, std::uint64_t count = 1);
  void merge(const EmpiricalDistribution& other);

  std::uint64_t count(std::uint64_t outcome) const;
  std::uint64_t total() const noexcept { return total_; }
  double probability(std::uint64_t outcome) const;
  /// Throws DomainError when empty.
  std::uint64_t max_outcome() const;
  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }

  /// "outcome,count" header, then one row per observed outcome.
  void write_csv(std::ostream& os) const;
  static EmpiricalDistribution read_csv(std::istream& is);

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Minimum of the U1 oracle for replicate `r` of campaign `seed`.
std::uint64_t mindeg_oracle_u1_draw(std::uint64_t seed, std::uint64_t r);
std::uint64_t mindeg_oracle_u2_draw(std::uint64_t seed, std::uint64_t r);

EmpiricalDistribution mindeg_oracle_u1(std::uint64_t reps, std::uint64_t seed);
EmpiricalDistribution mindeg_oracle_u2(std::uint64_t reps, std::uint64_t seed);

/// p (1 - p)^k.
double geometric_pmf(double p, std::uint64_t k);

/// Total variation distance between `emp` and Geometric(p) on {0, 1, ...}.
/// Outcomes are compared termwise up to max(support_cap, largest observed
/// outcome); the geometric mass beyond that is added in closed form.
double tv_distance(const EmpiricalDistribution& emp, double geometric_p, std::uint64_t support_cap);

}  // namespace graphon_lab
