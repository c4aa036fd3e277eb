#include <gtest/gtest.h>

#include <map>

#include "vmpt/rng.hpp"

using namespace vmpt;

// Reference values computed with an independent Python implementation of
// SplitMix64 and xoshiro256**.
TEST(Rng, SplitMixReference) {
  SplitMix64 sm(1234567);
  EXPECT_EQ(sm.next(), 6457827717110365317ULL);
}

TEST(Rng, XoshiroReference) {
  Rng a(42);
  EXPECT_EQ(a.next(), 1546998764402558742ULL);
  EXPECT_EQ(a.next(), 6990951692964543102ULL);
  EXPECT_EQ(a.next(), 12544586762248559009ULL);
  EXPECT_EQ(a.next(), 17057574109182124193ULL);
  Rng zero(0);
  EXPECT_EQ(zero.next(), 11091344671253066420ULL);
  EXPECT_EQ(zero.next(), 13793997310169335082ULL);
}

TEST(Rng, BoundedDrawsReference) {
  Rng r(7);
  const int expected[] = {4, 4, 8, 4, 4, 1, 6, 6, 8, 9};
  for (int e : expected) EXPECT_EQ(r.below(10), static_cast<std::uint64_t>(e));
}

TEST(Rng, StreamSeedsReference) {
  EXPECT_EQ(stream_seed(7, StreamTag::Arrivals), 2961274247818692726ULL);
  EXPECT_EQ(stream_seed(7, StreamTag::Vm, 1, 2, 3), 10783241066247131547ULL);
  EXPECT_NE(stream_seed(7, StreamTag::Vm, 1, 2, 3), stream_seed(7, StreamTag::Vm, 1, 3, 2));
}

TEST(Rng, UniformIntCoversRangeEvenly) {
  Rng r(99);
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < 60000; ++i) {
    const auto v = r.uniform_int(-2, 3);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 3);
    ++counts[v];
  }
  EXPECT_EQ(counts.size(), 6u);
  for (auto [v, n] : counts) EXPECT_NEAR(n, 10000, 500) << v;
}

TEST(Rng, BernoulliEdgesConsumeNothing) {
  Rng a(5), b(5);
  EXPECT_FALSE(a.bernoulli(0.0));
  EXPECT_TRUE(a.bernoulli(1.0));
  EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, PoissonMean) {
  Rng r(11);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(r.poisson(0.7));
  EXPECT_NEAR(sum / n, 0.7, 0.03);
}
