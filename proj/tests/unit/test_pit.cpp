#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/pit.hpp"
#include "sentinel/verify.hpp"

using namespace sentinel;

namespace {
constexpr double kInvE = 0.36787944117144232160;
constexpr double kHalfInvE = 0.18393972058572116080;

// Random finite discrete law on integer-spaced support of size 2..8.
NullDistribution random_tabulated(RandomStream& s) {
  const int size = 2 + static_cast<int>(s.next_uniform() * 7);
  std::vector<double> support;
  std::vector<double> masses;
  double total = 0.0;
  double x = std::floor(s.next_uniform() * 10.0) - 5.0;
  for (int i = 0; i < size; ++i) {
    support.push_back(x);
    x += 1.0 + std::floor(s.next_uniform() * 3.0);
    masses.push_back(0.05 + s.next_uniform());
    total += masses.back();
  }
  for (auto& m : masses) m /= total;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < masses.size(); ++i) sum += masses[i];
  masses.back() = 1.0 - sum;
  return NullDistribution::tabulated(support, masses);
}
}  // namespace

TEST(RandomizedPit, ContinuousIgnoresRandomizer) {
  EXPECT_DOUBLE_EQ(randomized_pit(NullDistribution::uniform01(), 0.3, 0.9), 0.3);
}

TEST(RandomizedPit, DiscreteInterpolates) {
  EXPECT_NEAR(randomized_pit(NullDistribution::poisson(1.0), 0.0, 0.5), kHalfInvE, 1e-16);
  const auto b = pit_bracket(NullDistribution::poisson(1.0), 1.0);
  EXPECT_NEAR(b.lower, kInvE, 1e-16);
  EXPECT_NEAR(b.upper, 2.0 * kInvE, 1e-15);
  const auto p = NullDistribution::poisson(1.0);
  EXPECT_NEAR(randomized_pit(p, 1.0, 1e-12), b.lower, 1e-12);
  EXPECT_NEAR(randomized_pit(p, 1.0, 1.0 - 1e-12), b.upper, 1e-12);
}

TEST(RandomizedPit, RejectsClosedEndpoints) {
  const auto p = NullDistribution::poisson(1.0);
  EXPECT_THROW(randomized_pit(p, 1.0, 0.0), DomainError);
  EXPECT_THROW(randomized_pit(p, 1.0, 1.0), DomainError);
}

TEST(RandomizedPit, BelowSupportFloorIsZero) {
  EXPECT_EQ(randomized_pit(NullDistribution::poisson(2.0), -1.0, 0.4), 0.0);
}

TEST(RandomizedPit, Bracketing) {
  RandomStream s(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_tabulated(s);
    const auto& t = std::get<TabulatedDiscrete>(d.kind());
    for (double x : t.support) {
      const double u = s.next_uniform();
      const double y = randomized_pit(d, x, u);
      ASSERT_LE(cdf_left(d, x), y);
      ASSERT_LE(y, cdf(d, x));
    }
  }
}

TEST(RandomizedPit, StrictOrderPreservation) {
  RandomStream s(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = random_tabulated(s);
    const auto& t = std::get<TabulatedDiscrete>(d.kind());
    for (double x : t.support) {
      for (double y : t.support) {
        if (!(cdf(d, x) > cdf(d, y))) continue;
        for (int k = 0; k < 5; ++k) {
          const double u = s.next_uniform();
          const double v = s.next_uniform();
          ASSERT_GT(randomized_pit(d, x, u), randomized_pit(d, y, v));
        }
      }
    }
  }
}

TEST(ExtremenessPanel, SingleContinuousCell) {
  const std::vector<NullDistribution> d{NullDistribution::uniform01()};
  const std::vector<double> obs{0.8};
  RandomStream s(1);
  const auto e = extremeness_panel(d, obs, s);
  ASSERT_EQ(e.values.size(), 1u);
  EXPECT_DOUBLE_EQ(e.values[0], 0.8);
  EXPECT_DOUBLE_EQ(e.max_value, 0.8);
}

TEST(ExtremenessPanel, ScriptedRandomizers) {
  const std::vector<NullDistribution> d(2, NullDistribution::poisson(1.0));
  const std::vector<double> obs{0.0, 0.0};
  ScriptedSource s({0.5, 0.25});
  const auto e = extremeness_panel(d, obs, s);
  EXPECT_NEAR(e.values[0], 0.5 * kInvE, 1e-16);
  EXPECT_NEAR(e.values[1], 0.25 * kInvE, 1e-16);
  EXPECT_NEAR(e.max_value, kHalfInvE, 1e-16);
  EXPECT_EQ(e.argmax_index, 0u);
  EXPECT_EQ(e.randomizers_used, (std::vector<double>{0.5, 0.25}));
}

TEST(ExtremenessPanel, TiesGoToLowestIndex) {
  const std::vector<NullDistribution> d(3, NullDistribution::uniform01());
  const std::vector<double> obs{0.2, 0.7, 0.7};
  RandomStream s(1);
  EXPECT_EQ(extremeness_panel(d, obs, s).argmax_index, 1u);
}

TEST(ExtremenessPanel, ShapeErrors) {
  const std::vector<NullDistribution> d(2, NullDistribution::poisson(1.0));
  const std::vector<double> obs{1.0};
  RandomStream s(1);
  EXPECT_THROW(extremeness_panel(d, obs, s), ShapeError);
  EXPECT_THROW(extremeness_panel({}, {}, s), ShapeError);
}

TEST(ExtremenessPanel, DeterministicAndReplayable) {
  const std::vector<NullDistribution> d{NullDistribution::poisson(1.2),
                                        NullDistribution::binomial(6, 0.4),
                                        NullDistribution::uniform01()};
  const std::vector<double> obs{2.0, 3.0, 0.61};
  RandomStream a(77);
  RandomStream b(77);
  const auto ea = extremeness_panel(d, obs, a);
  const auto eb = extremeness_panel(d, obs, b);
  EXPECT_EQ(ea.values, eb.values);
  EXPECT_EQ(ea.randomizers_used, eb.randomizers_used);
  ScriptedSource replay(ea.randomizers_used);
  EXPECT_EQ(extremeness_panel(d, obs, replay).values, ea.values);
}

TEST(ExtremenessPanel, NullPitIsUniform) {
  const auto d = NullDistribution::poisson(3.7);
  RandomStream s(2024);
  std::vector<double> ys(100000);
  for (auto& y : ys) {
    const double x = sample(d, s);
    y = randomized_pit(d, x, s.next_uniform());
  }
  EXPECT_TRUE(ks_uniformity(ys).pass_at_1pct) << ks_uniformity(ys).statistic;
}
