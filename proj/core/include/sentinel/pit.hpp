#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sentinel/distributions.hpp"
#include "sentinel/random.hpp"

namespace sentinel {

// Range swept by the randomized transform at x: [F(x^-), F(x)].
struct PitBracket {
  double lower;
  double upper;
};

PitBracket pit_bracket(const NullDistribution& dist, double x);

// (1 - u) F(x^-) + u F(x). Reduces to F(x) wherever F is continuous at x.
// Throws DomainError unless u is in (0,1).
double randomized_pit(const NullDistribution& dist, double x, double u);

// Extremeness indices of one panel.
struct ExtremenessVector {
  std::vector<double> values;
  double max_value = 0.0;
  std::size_t argmax_index = 0;  // lowest index on ties
  std::vector<double> randomizers_used;
};

// Draws one randomizer per cell, in cell order, from `source`. Replaying the
// recorded randomizers through a ScriptedSource reproduces the vector.
ExtremenessVector extremeness_panel(std::span<const NullDistribution> dists,
                                    std::span<const double> observations, UniformSource& source);

}  // namespace sentinel
