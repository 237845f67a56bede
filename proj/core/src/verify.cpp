#include "sentinel/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "sentinel/errors.hpp"
#include "sentinel/pit.hpp"
#include "sentinel/random.hpp"

namespace sentinel {

namespace {

constexpr std::size_t kBlockTrials = 4096;
constexpr std::size_t kMaxEnumerationCells = 4;
constexpr std::size_t kMaxEnumerationTuples = 20'000'000;
constexpr double kEnumerationTail = 1e-12;

std::size_t run_block(const SimulationConfig& config, std::size_t block, std::size_t trials,
                      double cut) {
  RandomStream stream(derive_seed(config.seed, block));
  const auto& cells = config.panel_template;
  std::size_t rejections = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    double max_y = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const NullDistribution& truth =
          (config.alternative && config.alternative->cell == i) ? config.alternative->dist
                                                                : cells[i];
      const double x = sample(truth, stream);
      const double y = randomized_pit(cells[i], x, stream.next_uniform());
      max_y = std::max(max_y, y);
    }
    if (max_y > cut) ++rejections;
  }
  return rejections;
}

// P(Y <= m) for Y uniform on [lo, hi] (a point mass when lo == hi).
double ramp(double m, double lo, double hi) {
  if (m >= hi) return 1.0;
  if (m < lo) return 0.0;
  if (hi == lo) return 1.0;
  return (m - lo) / (hi - lo);
}

struct Atom {
  double mass;
  double lower;
  double upper;
};

}  // namespace

SimulationResult simulate_size_and_power(const SimulationConfig& config) {
  if (config.n_trials < 1000) {
    throw ParameterError("simulations need at least 1000 trials, got " +
                         std::to_string(config.n_trials));
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw DomainError("significance level must lie in (0,1)");
  }
  if (config.panel_template.empty()) throw ShapeError("panel template is empty");
  if (config.alternative && config.alternative->cell >= config.panel_template.size()) {
    throw ShapeError("alternative cell index out of range");
  }

  const std::size_t n = config.panel_template.size();
  const double cut = config.rule == TestRule::ump_max
                         ? threshold(config.alpha, n)
                         : 1.0 - config.alpha / static_cast<double>(n);

  const std::size_t blocks = (config.n_trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::size_t> per_block(blocks, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      const std::size_t trials = std::min(kBlockTrials, config.n_trials - b * kBlockTrials);
      per_block[b] = run_block(config, b, trials, cut);
    }
  };

  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SimulationResult result;
  result.trials = config.n_trials;
  for (auto r : per_block) result.rejections += r;
  const double trials = static_cast<double>(config.n_trials);
  result.rejection_rate = static_cast<double>(result.rejections) / trials;
  result.std_error =
      std::sqrt(result.rejection_rate * (1.0 - result.rejection_rate) / trials);
  return result;
}

PValueBounds enumerate_pvalue_bounds(std::span<const NullDistribution> dists,
                                     std::span<const double> observations) {
  if (dists.size() != observations.size()) throw ShapeError("length mismatch");
  if (dists.empty()) throw ShapeError("panel must contain at least one cell");
  if (dists.size() > kMaxEnumerationCells) {
    throw SizeError("exact enumeration supports at most 4 cells");
  }

  PValueBounds b;
  b.n = dists.size();
  b.m_upper = -1.0;
  b.m_lower = -1.0;
  for (std::size_t j = 0; j < dists.size(); ++j) {
    const double hi = cdf(dists[j], observations[j]);
    const double lo = cdf_left(dists[j], observations[j]);
    if (hi > b.m_upper) {
      b.m_upper = hi;
      b.argmax_upper_cell = j;
    }
    if (lo > b.m_lower) {
      b.m_lower = lo;
      b.argmax_lower_cell = j;
    }
  }

  // Per-cell atoms; continuous cells are handled by their exact uniform law.
  std::vector<std::vector<Atom>> atoms(dists.size());
  std::size_t tuples = 1;
  for (std::size_t j = 0; j < dists.size(); ++j) {
    if (!dists[j].is_discrete()) continue;
    for (double x : truncated_support(dists[j], kEnumerationTail)) {
      atoms[j].push_back({mass(dists[j], x), cdf_left(dists[j], x), cdf(dists[j], x)});
    }
    tuples *= atoms[j].size();
    if (tuples > kMaxEnumerationTuples) throw SizeError("product support too large to enumerate");
  }

  // Walk every tuple of the product support with an odometer.
  double below_upper = 0.0;  // P(all Y_i <= m_upper)
  double below_lower = 0.0;  // P(all Y_i <= m_lower)
  std::vector<std::size_t> digit(dists.size(), 0);
  while (true) {
    double weight = 1.0;
    double p_upper = 1.0;
    double p_lower = 1.0;
    for (std::size_t j = 0; j < dists.size(); ++j) {
      if (atoms[j].empty()) {
        p_upper *= std::clamp(b.m_upper, 0.0, 1.0);
        p_lower *= std::clamp(b.m_lower, 0.0, 1.0);
        continue;
      }
      const Atom& a = atoms[j][digit[j]];
      weight *= a.mass;
      p_upper *= ramp(b.m_upper, a.lower, a.upper);
      p_lower *= ramp(b.m_lower, a.lower, a.upper);
    }
    below_upper += weight * p_upper;
    below_lower += weight * p_lower;

    std::size_t j = 0;
    for (; j < dists.size(); ++j) {
      if (atoms[j].empty()) continue;
      if (++digit[j] < atoms[j].size()) break;
      digit[j] = 0;
    }
    if (j == dists.size()) break;
  }

  b.lower = std::clamp(1.0 - below_upper, 0.0, 1.0);
  b.upper = std::clamp(1.0 - below_lower, 0.0, 1.0);
  return b;
}

double ks_critical_value_1pct(std::size_t sample_count) {
  return 1.628 / std::sqrt(static_cast<double>(sample_count));
}

KsResult ks_uniformity(std::span<const double> samples) {
  if (samples.empty()) throw ShapeError("KS test needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double s : sorted) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("KS samples must lie in [0,1]");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - sorted[i];
    const double below = sorted[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  KsResult r;
  r.statistic = d;
  r.critical_value = ks_critical_value_1pct(sorted.size());
  r.pass_at_1pct = d < r.critical_value;
  return r;
}

}  // namespace sentinel
