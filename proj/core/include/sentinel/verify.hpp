#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sentinel/distributions.hpp"
#include "sentinel/umptest.hpp"

namespace sentinel {

enum class TestRule {
  ump_max,     // reject iff max Y_i > (1 - alpha)^(1/n)
  bonferroni,  // reject iff some Y_i > 1 - alpha/n
};

struct Alternative {
  std::size_t cell;
  NullDistribution dist;
};

struct SimulationConfig {
  std::size_t n_trials = 0;  // >= 1000
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::vector<NullDistribution> panel_template;
  std::optional<Alternative> alternative;
  TestRule rule = TestRule::ump_max;
  std::size_t workers = 0;  // 0: hardware concurrency
};

struct SimulationResult {
  double rejection_rate = 0.0;
  double std_error = 0.0;  // binomial standard error of the rate
  std::size_t rejections = 0;
  std::size_t trials = 0;
};

// Trials are grouped in fixed blocks, block b drawing from
// derive_seed(seed, b); the result is bit-identical for any worker count.
// Each cell consumes two uniforms per trial: the sample, then the randomizer.
SimulationResult simulate_size_and_power(const SimulationConfig& config);

// Brute-force P(M > m) over the product support of at most four cells, with
// the randomizers integrated out exactly (each Y_i is uniform on its
// bracket). Supports are cut where the upper tail drops below 1e-12.
PValueBounds enumerate_pvalue_bounds(std::span<const NullDistribution> dists,
                                     std::span<const double> observations);

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool pass_at_1pct = false;
};

// One-sample Kolmogorov-Smirnov against U(0,1); asymptotic 1% critical
// value 1.628 / sqrt(N).
KsResult ks_uniformity(std::span<const double> samples);

double ks_critical_value_1pct(std::size_t sample_count);

}  // namespace sentinel
