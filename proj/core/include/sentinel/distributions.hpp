#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "sentinel/random.hpp"

namespace sentinel {

struct Poisson {
  double mean;
};

struct Binomial {
  std::uint64_t trials;
  double success_prob;
};

struct Uniform01 {};

// Finite discrete law. Support strictly increasing, masses positive and
// summing to 1 within 1e-12 (renormalized on construction).
struct TabulatedDiscrete {
  std::vector<double> support;
  std::vector<double> masses;
};

// Continuous law given by its CDF. The density is optional; when absent,
// callers that need it (MLR checks) fall back to central differences.
struct ContinuousByCdf {
  std::function<double(double)> cdf;
  std::function<double(double)> density;
};

// Null model of one panel cell. Immutable once constructed; every
// constructor validates its parameters and throws ParameterError.
class NullDistribution {
 public:
  using Kind = std::variant<Poisson, Binomial, Uniform01, TabulatedDiscrete, ContinuousByCdf>;

  explicit NullDistribution(Kind kind);

  static NullDistribution poisson(double mean);
  static NullDistribution binomial(std::uint64_t trials, double success_prob);
  static NullDistribution uniform01();
  static NullDistribution tabulated(std::vector<double> support, std::vector<double> masses);
  static NullDistribution continuous(std::function<double(double)> cdf,
                                     std::function<double(double)> density = {});

  const Kind& kind() const noexcept { return kind_; }

  bool is_discrete() const noexcept;
  // Poisson and Binomial: support is a range of non-negative integers.
  bool is_integer_supported() const noexcept;

  std::string describe() const;

  // Tabulated only: cumulative sums kept alongside the table.
  const std::vector<double>& tabulated_prefix() const noexcept { return prefix_; }
  const std::vector<double>& tabulated_suffix() const noexcept { return suffix_; }

 private:
  Kind kind_;
  std::vector<double> prefix_;  // prefix_[i] = P(X <= support[i])
  std::vector<double> suffix_;  // suffix_[i] = P(X >= support[i])
};

// F(x).
double cdf(const NullDistribution& dist, double x);
// F(x^-) = lim_{t -> x-} F(t).
double cdf_left(const NullDistribution& dist, double x);
// 1 - F(x), evaluated directly in the upper tail so that tiny tails keep
// their relative accuracy.
double survival(const NullDistribution& dist, double x);
// 1 - F(x^-) = P(X >= x).
double survival_left(const NullDistribution& dist, double x);
// F(x) - F(x^-); zero for continuous laws and off-support points.
double mass(const NullDistribution& dist, double x);

// Continuous density where defined (user density, Uniform01, or a central
// difference of the CDF). Throws ContractError for discrete laws.
double density(const NullDistribution& dist, double x);

// Generalized inverse sup{y : F(y) < omega}. Throws DomainError unless
// omega is in (0,1).
double skorokhod_quantile(const NullDistribution& dist, double omega);

// One draw by inverse sampling: skorokhod_quantile(dist, source.next_uniform()).
double sample(const NullDistribution& dist, UniformSource& source);

// Support points of a discrete law in increasing order, stopping at the
// first point whose upper tail P(X > x) is below tail_mass. Throws
// ContractError for continuous laws.
std::vector<double> truncated_support(const NullDistribution& dist, double tail_mass);

}  // namespace sentinel
