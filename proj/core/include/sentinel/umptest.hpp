#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sentinel/distributions.hpp"
#include "sentinel/pit.hpp"
#include "sentinel/random.hpp"

namespace sentinel {

enum class Branch { reject, accept, randomized };

std::string_view to_string(Branch branch) noexcept;

// Outcome of the UMP extreme-event test without the final coin flip.
struct TestDecision {
  double rejection_probability = 0.0;  // Phi
  double threshold = 0.0;              // (1 - alpha)^(1/n)
  Branch branch = Branch::accept;
  std::vector<std::size_t> randomized_set;  // cells with F(x^-) < threshold < F(x)
  double m_statistic = 0.0;                 // max_j F_j(x_j^-)
  double alpha = 0.0;
  std::size_t n = 0;
};

// Sandwich [1 - m_upper^n, 1 - m_lower^n] for the randomized test's p-value.
struct PValueBounds {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t n = 0;
  std::size_t argmax_upper_cell = 0;  // attains m_upper = max F(x)
  std::size_t argmax_lower_cell = 0;  // attains m_lower = max F(x^-)
  double m_upper = 0.0;
  double m_lower = 0.0;
};

// (1 - alpha)^(1/n). Throws DomainError unless alpha is in (0,1) and n >= 1.
double threshold(double alpha, std::size_t n);

// 1 - threshold(alpha, n), evaluated without cancellation.
double threshold_complement(double alpha, std::size_t n);

// Exact conditional rejection probability given the observations. Consumes
// no randomness.
TestDecision phi_expected(std::span<const NullDistribution> dists,
                          std::span<const double> observations, double alpha);

// Randomized form: 1 iff max Y_i > (1 - alpha)^(1/n).
int phi_randomized(const ExtremenessVector& extremeness, double alpha);

// Hard 0/1 decision. Draws one uniform only when the branch is randomized.
bool resolve_decision(const TestDecision& decision, UniformSource& source);

PValueBounds pvalue_bounds(std::span<const NullDistribution> dists,
                           std::span<const double> observations);

// Power when exactly one cell is replaced and its extremeness index has CDF
// `alt_extremeness_cdf` under the alternative: 1 - t^(n-1) G(t).
double power_single_alternative(const std::function<double(double)>& alt_extremeness_cdf,
                                double alpha, std::size_t n);

}  // namespace sentinel
