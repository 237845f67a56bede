#include "sentinel/pit.hpp"

#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

PitBracket pit_bracket(const NullDistribution& dist, double x) {
  return {cdf_left(dist, x), cdf(dist, x)};
}

double randomized_pit(const NullDistribution& dist, double x, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("randomizer must lie in (0,1), got " + std::to_string(u));
  }
  const auto [lower, upper] = pit_bracket(dist, x);
  if (lower == upper) return upper;
  return (1.0 - u) * lower + u * upper;
}

ExtremenessVector extremeness_panel(std::span<const NullDistribution> dists,
                                    std::span<const double> observations, UniformSource& source) {
  if (dists.size() != observations.size()) {
    throw ShapeError("panel has " + std::to_string(dists.size()) + " distributions but " +
                     std::to_string(observations.size()) + " observations");
  }
  if (dists.empty()) throw ShapeError("panel must contain at least one cell");

  ExtremenessVector out;
  out.values.reserve(dists.size());
  out.randomizers_used.reserve(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const double u = source.next_uniform();
    const double y = randomized_pit(dists[i], observations[i], u);
    out.randomizers_used.push_back(u);
    out.values.push_back(y);
    if (i == 0 || y > out.max_value) {
      out.max_value = y;
      out.argmax_index = i;
    }
  }
  return out;
}

}  // namespace sentinel
