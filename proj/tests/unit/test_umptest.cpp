#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/monotone.hpp"
#include "sentinel/umptest.hpp"
#include "sentinel/verify.hpp"

using namespace sentinel;

namespace {
// mpmath, 40 digits.
constexpr double kThreshold40 = 0.99871848947712473977;
constexpr double kThreshold2 = 0.97467943448089639068;
constexpr double kPhiPoissonSmall = 0.04045234127004034533;
constexpr double kOneMinusEm2 = 0.86466471676338730811;
constexpr double kPowerSquareN2 = 0.07405453724314842885;

NullDistribution random_small_poisson(RandomStream& s) {
  return NullDistribution::poisson(0.05 + 3.0 * s.next_uniform());
}
}  // namespace

TEST(Threshold, Examples) {
  EXPECT_NEAR(threshold(0.05, 1), 0.95, 1e-16);
  EXPECT_NEAR(threshold(0.05, 40), kThreshold40, 1e-16);
  EXPECT_LE(threshold(1e-300, 7), 1.0);
  EXPECT_GT(threshold(1e-12, 7), 1.0 - 1e-12);
  EXPECT_THROW(threshold(0.0, 3), DomainError);
  EXPECT_THROW(threshold(1.0, 3), DomainError);
  EXPECT_THROW(threshold(0.05, 0), DomainError);
  EXPECT_NEAR(threshold_complement(0.01, 40), 1.0 - std::pow(0.99, 1.0 / 40), 1e-15);
}

TEST(PhiExpected, ContinuousAboveThresholdRejects) {
  const std::vector<NullDistribution> d{NullDistribution::uniform01()};
  const std::vector<double> x{0.99};
  const auto r = phi_expected(d, x, 0.05);
  EXPECT_EQ(r.branch, Branch::reject);
  EXPECT_EQ(r.rejection_probability, 1.0);
  EXPECT_NEAR(r.threshold, 0.95, 1e-16);
}

TEST(PhiExpected, ProductBranch) {
  const std::vector<NullDistribution> d{NullDistribution::poisson(0.01)};
  const std::vector<double> x{0.0};
  const auto r = phi_expected(d, x, 0.05);
  EXPECT_EQ(r.branch, Branch::randomized);
  ASSERT_EQ(r.randomized_set, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(r.rejection_probability, kPhiPoissonSmall, 1e-14);
  EXPECT_EQ(r.m_statistic, 0.0);
}

TEST(PhiExpected, FarBelowThresholdAccepts) {
  const std::vector<NullDistribution> d(2, NullDistribution::poisson(5.0));
  const std::vector<double> x{0.0, 1.0};
  const auto r = phi_expected(d, x, 0.05);
  EXPECT_EQ(r.branch, Branch::accept);
  EXPECT_EQ(r.rejection_probability, 0.0);
  EXPECT_TRUE(r.randomized_set.empty());
  EXPECT_NEAR(r.threshold, kThreshold2, 2.3e-16);
}

TEST(PhiExpected, BoundaryMEqualsThresholdAccepts) {
  // F(x^-) exactly at 0.95 for n = 1, no straddling cell.
  const auto d = NullDistribution::tabulated({0.0, 1.0}, {0.95, 0.05});
  const std::vector<NullDistribution> ds{d};
  const std::vector<double> x{0.0};
  EXPECT_EQ(phi_expected(ds, x, 0.05).branch, Branch::accept);
}

TEST(PhiExpected, ShapeErrors) {
  const std::vector<NullDistribution> d(2, NullDistribution::poisson(1.0));
  const std::vector<double> x{1.0};
  EXPECT_THROW(phi_expected(d, x, 0.05), ShapeError);
  EXPECT_THROW(phi_expected(d, std::vector<double>{1.0, 1.0}, 1.5), DomainError);
}

TEST(PhiExpected, BranchInvariants) {
  RandomStream s(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(s.next_uniform() * 5);
    std::vector<NullDistribution> d;
    std::vector<double> x;
    for (std::size_t i = 0; i < n; ++i) {
      d.push_back(random_small_poisson(s));
      x.push_back(std::floor(s.next_uniform() * 7));
    }
    const auto r = phi_expected(d, x, 0.05);
    ASSERT_GE(r.rejection_probability, 0.0);
    ASSERT_LE(r.rejection_probability, 1.0);
    switch (r.branch) {
      case Branch::reject:
        ASSERT_EQ(r.rejection_probability, 1.0);
        break;
      case Branch::accept:
        ASSERT_EQ(r.rejection_probability, 0.0);
        break;
      case Branch::randomized:
        ASSERT_GT(r.rejection_probability, 0.0);
        ASSERT_LT(r.rejection_probability, 1.0);
        ASSERT_FALSE(r.randomized_set.empty());
        break;
    }
    ASSERT_NEAR(r.threshold, std::pow(0.95, 1.0 / static_cast<double>(n)), 2e-16);
  }
}

TEST(PhiRandomized, Examples) {
  ExtremenessVector hi;
  hi.values = {0.999, 0.2};
  hi.max_value = 0.999;
  EXPECT_EQ(phi_randomized(hi, 0.05), 1);
  ExtremenessVector lo;
  lo.values = {0.5, 0.5};
  lo.max_value = 0.5;
  EXPECT_EQ(phi_randomized(lo, 0.05), 0);
}

TEST(PhiRandomized, AveragesToPhiExpected) {
  const std::vector<NullDistribution> d{NullDistribution::poisson(0.01),
                                        NullDistribution::poisson(0.02)};
  const std::vector<double> x{0.0, 0.0};
  const auto expected = phi_expected(d, x, 0.05);
  ASSERT_EQ(expected.branch, Branch::randomized);
  RandomStream s(99);
  constexpr int kReps = 100000;
  int hits = 0;
  for (int i = 0; i < kReps; ++i) hits += phi_randomized(extremeness_panel(d, x, s), 0.05);
  EXPECT_NEAR(static_cast<double>(hits) / kReps, expected.rejection_probability, 0.005);
}

TEST(ResolveDecision, DrawsOnlyWhenRandomized) {
  TestDecision reject;
  reject.branch = Branch::reject;
  ScriptedSource none({});
  EXPECT_TRUE(resolve_decision(reject, none));
  TestDecision accept;
  EXPECT_FALSE(resolve_decision(accept, none));
  TestDecision mid;
  mid.branch = Branch::randomized;
  mid.rejection_probability = 0.3;
  ScriptedSource s({0.2, 0.4});
  EXPECT_TRUE(resolve_decision(mid, s));
  EXPECT_FALSE(resolve_decision(mid, s));
}

TEST(PValueBounds, Examples) {
  {
    const std::vector<NullDistribution> d{NullDistribution::uniform01()};
    const std::vector<double> x{0.8};
    const auto b = pvalue_bounds(d, x);
    EXPECT_NEAR(b.lower, 0.2, 1e-15);
    EXPECT_NEAR(b.upper, 0.2, 1e-15);
  }
  {
    const std::vector<NullDistribution> d(2, NullDistribution::poisson(1.0));
    const std::vector<double> x{0.0, 0.0};
    const auto b = pvalue_bounds(d, x);
    EXPECT_EQ(b.m_lower, 0.0);
    EXPECT_NEAR(b.lower, kOneMinusEm2, 1e-15);
    EXPECT_EQ(b.upper, 1.0);
    EXPECT_EQ(b.n, 2u);
  }
}

TEST(PValueBounds, KeepsDigitsForTinyTails) {
  // One extreme cell among 40: count 8 at mean 1.
  std::vector<NullDistribution> d(40, NullDistribution::poisson(1.0));
  std::vector<double> x(40, 0.0);
  x[17] = 8.0;
  const auto b = pvalue_bounds(d, x);
  const double sf8 = oracle::poisson_sf(8, 1.0);
  const double sf7 = oracle::poisson_sf(7, 1.0);
  EXPECT_NEAR(b.lower, -std::expm1(40.0 * std::log1p(-sf8)), 1e-12 * b.lower);
  EXPECT_NEAR(b.upper, -std::expm1(40.0 * std::log1p(-sf7)), 1e-12 * b.upper);
  EXPECT_EQ(b.argmax_upper_cell, 17u);
  EXPECT_EQ(b.argmax_lower_cell, 17u);
}

TEST(PValueBounds, OrderedAndSandwichPhi) {
  RandomStream s(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(s.next_uniform() * 6);
    std::vector<NullDistribution> d;
    std::vector<double> x;
    for (std::size_t i = 0; i < n; ++i) {
      d.push_back(random_small_poisson(s));
      x.push_back(std::floor(s.next_uniform() * 9));
    }
    const auto b = pvalue_bounds(d, x);
    ASSERT_LE(0.0, b.lower);
    ASSERT_LE(b.lower, b.upper);
    ASSERT_LE(b.upper, 1.0);
    for (double alpha : {0.01, 0.05, 0.2}) {
      const auto r = phi_expected(d, x, alpha);
      if (b.upper < alpha) ASSERT_EQ(r.branch, Branch::reject);
      if (b.lower > alpha) ASSERT_EQ(r.branch, Branch::accept);
    }
  }
}

TEST(Power, Examples) {
  const auto identity = [](double y) { return y; };
  const auto square = [](double y) { return y * y; };
  for (std::size_t n : {1u, 2u, 40u}) {
    EXPECT_NEAR(power_single_alternative(identity, 0.05, n), 0.05, 1e-14);
  }
  EXPECT_NEAR(power_single_alternative(square, 0.05, 1), 0.0975, 1e-15);
  EXPECT_NEAR(power_single_alternative(square, 0.05, 2), kPowerSquareN2, 1e-15);
  EXPECT_THROW(power_single_alternative([](double) { return 1.5; }, 0.05, 3), ContractError);
}

TEST(Power, MonotoneInAlternativeMean) {
  std::vector<NullDistribution> tmpl(10, NullDistribution::poisson(1.0));
  double previous_analytic = 0.0;
  double previous_rate = 0.0;
  double previous_se = 0.0;
  for (double mean : {1.0, 2.0, 3.0, 5.0, 8.0}) {
    ModelPair pair(NullDistribution::poisson(1.0), NullDistribution::poisson(mean));
    const double analytic =
        power_single_alternative(alt_extremeness_cdf_handle(pair), 0.05, tmpl.size());
    EXPECT_GE(analytic, previous_analytic - 1e-12);
    previous_analytic = analytic;

    SimulationConfig cfg;
    cfg.n_trials = 20000;
    cfg.seed = 31;
    cfg.alpha = 0.05;
    cfg.panel_template = tmpl;
    cfg.alternative = Alternative{0, NullDistribution::poisson(mean)};
    const auto sim = simulate_size_and_power(cfg);
    EXPECT_GE(sim.rejection_rate + 3 * sim.std_error, previous_rate - 3 * previous_se);
    previous_rate = sim.rejection_rate;
    previous_se = sim.std_error;
  }
}

TEST(Power, UmpBeatsBonferroni) {
  std::vector<NullDistribution> tmpl(40, NullDistribution::poisson(1.0));
  SimulationConfig cfg;
  cfg.n_trials = 20000;
  cfg.seed = 8;
  cfg.alpha = 0.05;
  cfg.panel_template = tmpl;
  cfg.alternative = Alternative{5, NullDistribution::poisson(6.0)};
  const auto ump = simulate_size_and_power(cfg);
  cfg.rule = TestRule::bonferroni;
  const auto bonf = simulate_size_and_power(cfg);
  EXPECT_GE(ump.rejection_rate, bonf.rejection_rate - 3 * bonf.std_error);
}
