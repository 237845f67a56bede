#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sentinel/distributions.hpp"
#include "sentinel/umptest.hpp"

namespace sentinel {

struct CellKey {
  std::string region_id;
  std::string period_id;

  auto operator<=>(const CellKey&) const = default;
};

// One region x period cell of a surveillance panel.
struct Cell {
  std::string region_id;
  std::string period_id;
  std::uint64_t count = 0;
  double population = 0.0;
  bool included = true;

  CellKey key() const { return {region_id, period_id}; }
  bool operator==(const Cell&) const = default;
};

// Region x period count panel. Keys are unique; included cells have a
// positive population. Excluded cells are kept for bookkeeping but ignored
// by every statistic.
class CountPanel {
 public:
  CountPanel() = default;
  explicit CountPanel(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  std::size_t included_count() const noexcept;

  // Panel indices of included cells, in panel order.
  std::vector<std::size_t> included_indices() const;
  std::optional<std::size_t> find(const CellKey& key) const;

  void exclude(const CellKey& key);

  bool operator==(const CountPanel&) const = default;

 private:
  std::vector<Cell> cells_;
};

// Result of one epidemic test. Cell indices inside `bounds` and `decision`
// count included cells only, in panel order.
struct EpidemicReport {
  PValueBounds bounds;
  TestDecision decision;
  CellKey flagged_cell;
  double lambda_used = 0.0;
  double alpha = 0.0;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  // Set when a seed resolved the decision to a hard 0/1 outcome.
  std::optional<bool> hard_rejection;

  bool rejected() const noexcept;
};

// Pooled rate: total count / total population over included cells.
// Throws DataError with no included cells, zero population or zero cases.
double estimate_lambda(const CountPanel& panel);

// Poisson(lambda * population) for each included cell, in panel order.
std::vector<NullDistribution> null_distributions(const CountPanel& panel, double lambda);

// Flags the cell attaining max F(n_ij); exact ties go to the smallest
// (region, period) key so the flag does not depend on row order.
EpidemicReport epidemic_test(const CountPanel& panel, std::optional<double> lambda, double alpha,
                             std::optional<std::uint64_t> seed);

// Repeats epidemic_test, excluding the flagged cell after each rejection.
// Lambda, when estimated, is estimated once on the starting panel. Round r
// resolves randomized decisions with derive_seed(seed, r) (round 0 uses seed).
std::vector<EpidemicReport> peel_test(const CountPanel& panel, std::optional<double> lambda,
                                      double alpha, std::size_t max_rounds,
                                      std::optional<std::uint64_t> seed);

}  // namespace sentinel
