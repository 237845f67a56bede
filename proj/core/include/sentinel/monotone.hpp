#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sentinel/distributions.hpp"

namespace sentinel {

enum class SupportKind { discrete, continuous };

// A null law and the alternative a cheater would substitute for it.
//
// Construction checks that both laws are of the same support kind and, for
// discrete pairs, that the alternative puts no mass where the null has none
// (on the support up to the 1 - 1e-12 quantile of either law).
class ModelPair {
 public:
  ModelPair(NullDistribution null_dist, NullDistribution alt_dist);

  const NullDistribution& null_dist() const noexcept { return null_; }
  const NullDistribution& alt_dist() const noexcept { return alt_; }
  SupportKind support_kind() const noexcept { return kind_; }

 private:
  NullDistribution null_;
  NullDistribution alt_;
  SupportKind kind_;
};

// CDF of Y = randomized_pit(null, X, U) when X follows the alternative.
// Discrete: F1(x^-) + p1(x)/p0(x) * (y - F0(x^-)) on [F0(x^-), F0(x)).
// Continuous: F1(F0^{-1}(y)). Defined on [0,1].
double alt_extremeness_cdf(const ModelPair& pair, double y);

// Handle suitable for power_single_alternative() and convexity_check().
std::function<double(double)> alt_extremeness_cdf_handle(ModelPair pair);

struct MlrCheck {
  bool holds = true;
  std::optional<std::pair<double, double>> violation;  // first offending adjacent probes
};

// Likelihood (mass or density) ratio alt/null non-decreasing along the
// probes, within relative tolerance 1e-9.
MlrCheck mlr_check(const ModelPair& pair, std::span<const double> probe_points);

// Discrete pairs: every support point up to the 1 - 1e-12 quantile of both
// laws. Continuous pairs: 1000 points between the null's 1e-6 and 1 - 1e-6
// quantiles.
std::vector<double> default_probe_points(const ModelPair& pair);

struct ConvexityCheck {
  bool holds = true;
  std::optional<double> violation;  // grid midpoint where the test failed
};

// Midpoint convexity F((a+b)/2) <= (F(a)+F(b))/2 on consecutive triples of a
// uniform grid over [0,1], tolerance 1e-9. Requires F(0)=0, F(1)=1 and
// grid_size >= 3 (ContractError otherwise).
ConvexityCheck convexity_check(const std::function<double(double)>& cdf_on_unit,
                               std::size_t grid_size);

}  // namespace sentinel
