#include <set>

#include <gtest/gtest.h>

#include "sentinel/errors.hpp"
#include "sentinel/random.hpp"

using namespace sentinel;

TEST(RandomStream, OpenUnitInterval) {
  RandomStream s(0);
  for (int i = 0; i < 200000; ++i) {
    const double u = s.next_uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_uniform(), b.next_uniform());
  RandomStream c(43);
  EXPECT_NE(RandomStream(42).next_u64(), c.next_u64());
}

TEST(RandomStream, SplitIsDeterministicAndDistinct) {
  const RandomStream base(9);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 64; ++k) {
    auto s1 = base.split(k);
    auto s2 = base.split(k);
    const auto v = s1.next_u64();
    EXPECT_EQ(v, s2.next_u64());
    firsts.insert(v);
  }
  EXPECT_EQ(firsts.size(), 64u);
  EXPECT_EQ(base.split(3).seed(), derive_seed(9, 3));
}

TEST(ScriptedSource, ReplaysThenThrows) {
  ScriptedSource s({0.25, 0.5});
  EXPECT_EQ(s.next_uniform(), 0.25);
  EXPECT_EQ(s.next_uniform(), 0.5);
  EXPECT_EQ(s.consumed(), 2u);
  EXPECT_THROW(s.next_uniform(), DomainError);
  ScriptedSource bad({1.0});
  EXPECT_THROW(bad.next_uniform(), DomainError);
}
