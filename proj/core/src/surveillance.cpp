#include "sentinel/surveillance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sentinel/errors.hpp"
#include "sentinel/random.hpp"

namespace sentinel {

CountPanel::CountPanel(std::vector<Cell> cells) : cells_(std::move(cells)) {
  std::set<CellKey> seen;
  for (const auto& c : cells_) {
    if (!seen.insert(c.key()).second) {
      throw DataError("duplicate cell (" + c.region_id + ", " + c.period_id + ")");
    }
    if (c.included && !(c.population > 0.0 && std::isfinite(c.population))) {
      throw DataError("included cell (" + c.region_id + ", " + c.period_id +
                      ") needs a positive population");
    }
  }
}

std::size_t CountPanel::included_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.included; }));
}

std::vector<std::size_t> CountPanel::included_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].included) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> CountPanel::find(const CellKey& key) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].key() == key) return i;
  }
  return std::nullopt;
}

void CountPanel::exclude(const CellKey& key) {
  const auto idx = find(key);
  if (!idx) throw DataError("no cell (" + key.region_id + ", " + key.period_id + ")");
  cells_[*idx].included = false;
}

bool EpidemicReport::rejected() const noexcept {
  if (decision.branch == Branch::reject) return true;
  return decision.branch == Branch::randomized && hard_rejection.value_or(false);
}

double estimate_lambda(const CountPanel& panel) {
  double cases = 0.0;
  double population = 0.0;
  std::size_t included = 0;
  for (const auto& c : panel.cells()) {
    if (!c.included) continue;
    ++included;
    cases += static_cast<double>(c.count);
    population += c.population;
  }
  if (included == 0) throw DataError("panel has no included cells");
  if (!(population > 0.0)) throw DataError("total population of included cells is zero");
  if (cases == 0.0) {
    throw DataError("panel has no cases; the pooled rate is zero, pass lambda explicitly");
  }
  return cases / population;
}

std::vector<NullDistribution> null_distributions(const CountPanel& panel, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("lambda must be positive and finite");
  }
  std::vector<NullDistribution> out;
  for (const auto& c : panel.cells()) {
    if (c.included) out.push_back(NullDistribution::poisson(lambda * c.population));
  }
  return out;
}

EpidemicReport epidemic_test(const CountPanel& panel, std::optional<double> lambda, double alpha,
                             std::optional<std::uint64_t> seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("significance level must lie in (0,1)");
  const auto indices = panel.included_indices();
  if (indices.empty()) throw DataError("panel has no included cells");

  EpidemicReport report;
  report.lambda_used = lambda ? *lambda : estimate_lambda(panel);
  report.alpha = alpha;
  report.n = indices.size();
  report.seed = seed;

  const auto dists = null_distributions(panel, report.lambda_used);
  std::vector<double> counts;
  counts.reserve(indices.size());
  for (auto i : indices) counts.push_back(static_cast<double>(panel.cells()[i].count));

  report.bounds = pvalue_bounds(dists, counts);
  report.decision = phi_expected(dists, counts, alpha);

  // Flag: smallest upper tail, ties to the smallest key.
  double best_tail = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const double tail = survival(dists[j], counts[j]);
    const CellKey key = panel.cells()[indices[j]].key();
    if (tail < best_tail || (tail == best_tail && key < report.flagged_cell)) {
      best_tail = tail;
      report.flagged_cell = key;
    }
  }

  if (seed) {
    RandomStream stream(*seed);
    report.hard_rejection = resolve_decision(report.decision, stream);
  }
  return report;
}

std::vector<EpidemicReport> peel_test(const CountPanel& panel, std::optional<double> lambda,
                                      double alpha, std::size_t max_rounds,
                                      std::optional<std::uint64_t> seed) {
  if (max_rounds == 0) throw ParameterError("max_rounds must be at least 1");
  CountPanel working = panel;
  const double lambda_used = lambda ? *lambda : estimate_lambda(panel);

  std::vector<EpidemicReport> reports;
  for (std::size_t round = 0; round < max_rounds && working.included_count() > 0; ++round) {
    std::optional<std::uint64_t> round_seed;
    if (seed) round_seed = round == 0 ? *seed : derive_seed(*seed, round);
    reports.push_back(epidemic_test(working, lambda_used, alpha, round_seed));
    if (!reports.back().rejected()) break;
    working.exclude(reports.back().flagged_cell);
  }
  return reports;
}

}  // namespace sentinel
