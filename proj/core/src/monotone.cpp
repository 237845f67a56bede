#include "sentinel/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

constexpr double kProbeTail = 1e-12;

SupportKind kind_of(const NullDistribution& d) {
  return d.is_discrete() ? SupportKind::discrete : SupportKind::continuous;
}

std::vector<double> discrete_probe_union(const NullDistribution& a, const NullDistribution& b) {
  std::set<double> points;
  for (double x : truncated_support(a, kProbeTail)) points.insert(x);
  for (double x : truncated_support(b, kProbeTail)) points.insert(x);
  return {points.begin(), points.end()};
}

double likelihood(const NullDistribution& d, double x) {
  return d.is_discrete() ? mass(d, x) : density(d, x);
}

}  // namespace

ModelPair::ModelPair(NullDistribution null_dist, NullDistribution alt_dist)
    : null_(std::move(null_dist)), alt_(std::move(alt_dist)), kind_(kind_of(null_)) {
  if (kind_of(alt_) != kind_) {
    throw ContractError("null and alternative must both be discrete or both continuous");
  }
  if (kind_ == SupportKind::discrete) {
    for (double x : discrete_probe_union(null_, alt_)) {
      if (mass(null_, x) == 0.0 && mass(alt_, x) > 0.0) {
        throw AbsoluteContinuityError("alternative has mass at " + std::to_string(x) +
                                      " where the null has none");
      }
    }
  }
}

double alt_extremeness_cdf(const ModelPair& pair, double y) {
  if (std::isnan(y) || y < 0.0 || y > 1.0) {
    throw DomainError("extremeness level must lie in [0,1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;

  const auto& f0 = pair.null_dist();
  const auto& f1 = pair.alt_dist();
  const double x = skorokhod_quantile(f0, y);  // F0(x^-) < y <= F0(x)

  if (pair.support_kind() == SupportKind::continuous) return cdf(f1, x);

  const double p0 = mass(f0, x);
  if (!(p0 > 0.0)) {
    throw AbsoluteContinuityError("null mass vanishes at located support point " +
                                  std::to_string(x));
  }
  const double p1 = mass(f1, x);
  const double value = cdf_left(f1, x) + (p1 / p0) * (y - cdf_left(f0, x));
  return std::clamp(value, 0.0, 1.0);
}

std::function<double(double)> alt_extremeness_cdf_handle(ModelPair pair) {
  return [pair = std::move(pair)](double y) { return alt_extremeness_cdf(pair, y); };
}

MlrCheck mlr_check(const ModelPair& pair, std::span<const double> probe_points) {
  for (std::size_t i = 1; i < probe_points.size(); ++i) {
    if (!(probe_points[i] > probe_points[i - 1])) {
      throw ContractError("probe points must be strictly increasing");
    }
  }
  MlrCheck result;
  double previous_ratio = 0.0;
  for (std::size_t i = 0; i < probe_points.size(); ++i) {
    const double x = probe_points[i];
    const double l0 = likelihood(pair.null_dist(), x);
    if (!(l0 > 0.0)) {
      throw AbsoluteContinuityError("null likelihood vanishes at probe point " +
                                    std::to_string(x));
    }
    const double ratio = likelihood(pair.alt_dist(), x) / l0;
    if (i > 0 && ratio < previous_ratio * (1.0 - 1e-9)) {
      result.holds = false;
      result.violation = std::pair{probe_points[i - 1], x};
      return result;
    }
    previous_ratio = ratio;
  }
  return result;
}

std::vector<double> default_probe_points(const ModelPair& pair) {
  if (pair.support_kind() == SupportKind::discrete) {
    std::vector<double> points;
    for (double x : discrete_probe_union(pair.null_dist(), pair.alt_dist())) {
      if (mass(pair.null_dist(), x) > 0.0) points.push_back(x);
    }
    return points;
  }
  const double lo = skorokhod_quantile(pair.null_dist(), 1e-6);
  const double hi = skorokhod_quantile(pair.null_dist(), 1.0 - 1e-6);
  constexpr std::size_t kCount = 1000;
  std::vector<double> points;
  points.reserve(kCount);
  for (std::size_t i = 0; i < kCount; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kCount - 1);
    if (points.empty() || x > points.back()) points.push_back(x);
  }
  return points;
}

ConvexityCheck convexity_check(const std::function<double(double)>& cdf_on_unit,
                               std::size_t grid_size) {
  if (grid_size < 3) throw ContractError("convexity grid needs at least 3 points");
  if (std::fabs(cdf_on_unit(0.0)) > 1e-12 || std::fabs(cdf_on_unit(1.0) - 1.0) > 1e-12) {
    throw ContractError("function must map 0 to 0 and 1 to 1");
  }
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  std::vector<double> values(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double y = i + 1 == grid_size ? 1.0 : static_cast<double>(i) * step;
    values[i] = cdf_on_unit(y);
  }
  ConvexityCheck result;
  for (std::size_t i = 1; i + 1 < grid_size; ++i) {
    if (values[i] > 0.5 * (values[i - 1] + values[i + 1]) + 1e-9) {
      result.holds = false;
      result.violation = static_cast<double>(i) * step;
      return result;
    }
  }
  return result;
}

}  // namespace sentinel
