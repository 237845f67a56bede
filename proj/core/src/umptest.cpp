#include "sentinel/umptest.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("significance level must lie in (0,1), got " + std::to_string(alpha));
  }
}

void check_shape(std::span<const NullDistribution> dists, std::span<const double> observations) {
  if (dists.size() != observations.size()) {
    throw ShapeError("panel has " + std::to_string(dists.size()) + " distributions but " +
                     std::to_string(observations.size()) + " observations");
  }
  if (dists.empty()) throw ShapeError("panel must contain at least one cell");
}

// 1 - m^n from the tail 1 - m, without forming m^n.
double one_minus_power(double tail, std::size_t n) {
  if (tail >= 1.0) return 1.0;
  if (tail <= 0.0) return 0.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-tail));
}

}  // namespace

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::reject:
      return "reject";
    case Branch::accept:
      return "accept";
    case Branch::randomized:
      return "randomized";
  }
  return "unknown";
}

double threshold_complement(double alpha, std::size_t n) {
  check_alpha(alpha);
  if (n == 0) throw DomainError("panel size must be at least 1");
  return -std::expm1(std::log1p(-alpha) / static_cast<double>(n));
}

double threshold(double alpha, std::size_t n) {
  check_alpha(alpha);
  if (n == 0) throw DomainError("panel size must be at least 1");
  return std::exp(std::log1p(-alpha) / static_cast<double>(n));
}

TestDecision phi_expected(std::span<const NullDistribution> dists,
                          std::span<const double> observations, double alpha) {
  check_shape(dists, observations);
  const std::size_t n = dists.size();

  TestDecision d;
  d.alpha = alpha;
  d.n = n;
  d.threshold = threshold(alpha, n);
  // Comparisons against the threshold run on tails: 1 - t is tiny when n is
  // large, and F close to 1 carries no digits of 1 - F.
  const double c = threshold_complement(alpha, n);

  double min_left_tail = std::numeric_limits<double>::infinity();
  std::vector<double> left_tails(n);
  std::vector<double> tails(n);
  for (std::size_t j = 0; j < n; ++j) {
    left_tails[j] = survival_left(dists[j], observations[j]);
    tails[j] = survival(dists[j], observations[j]);
    min_left_tail = std::min(min_left_tail, left_tails[j]);
    d.m_statistic = std::max(d.m_statistic, cdf_left(dists[j], observations[j]));
  }

  if (min_left_tail < c) {
    d.branch = Branch::reject;
    d.rejection_probability = 1.0;
    return d;
  }

  double keep = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (left_tails[j] > c && tails[j] < c) {
      const double width = left_tails[j] - tails[j];
      if (!(width > 0.0)) {
        throw DegenerateMassError("cell " + std::to_string(j) +
                                  " straddles the threshold with zero null mass");
      }
      d.randomized_set.push_back(j);
      keep *= (left_tails[j] - c) / width;
    }
  }

  if (d.randomized_set.empty()) {
    d.branch = Branch::accept;
    d.rejection_probability = 0.0;
  } else {
    d.branch = Branch::randomized;
    d.rejection_probability = 1.0 - keep;
  }
  return d;
}

int phi_randomized(const ExtremenessVector& extremeness, double alpha) {
  const double t = threshold(alpha, extremeness.values.size());
  return extremeness.max_value > t ? 1 : 0;
}

bool resolve_decision(const TestDecision& decision, UniformSource& source) {
  switch (decision.branch) {
    case Branch::reject:
      return true;
    case Branch::accept:
      return false;
    case Branch::randomized:
      return source.next_uniform() < decision.rejection_probability;
  }
  return false;
}

PValueBounds pvalue_bounds(std::span<const NullDistribution> dists,
                           std::span<const double> observations) {
  check_shape(dists, observations);
  PValueBounds b;
  b.n = dists.size();
  double min_tail = std::numeric_limits<double>::infinity();
  double min_left_tail = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < dists.size(); ++j) {
    const double tail = survival(dists[j], observations[j]);
    const double left_tail = survival_left(dists[j], observations[j]);
    if (tail < min_tail) {
      min_tail = tail;
      b.argmax_upper_cell = j;
    }
    if (left_tail < min_left_tail) {
      min_left_tail = left_tail;
      b.argmax_lower_cell = j;
    }
  }
  b.m_upper = cdf(dists[b.argmax_upper_cell], observations[b.argmax_upper_cell]);
  b.m_lower = cdf_left(dists[b.argmax_lower_cell], observations[b.argmax_lower_cell]);
  b.lower = one_minus_power(min_tail, b.n);
  b.upper = one_minus_power(min_left_tail, b.n);
  return b;
}

double power_single_alternative(const std::function<double(double)>& alt_extremeness_cdf,
                                double alpha, std::size_t n) {
  const double t = threshold(alpha, n);
  const double g = alt_extremeness_cdf(t);
  if (!(g >= 0.0 && g <= 1.0)) {
    throw ContractError("alternative extremeness cdf returned " + std::to_string(g) +
                        " at the threshold");
  }
  return 1.0 - std::pow(t, static_cast<double>(n - 1)) * g;
}

}  // namespace sentinel
