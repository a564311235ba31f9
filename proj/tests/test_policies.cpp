#include <gtest/gtest.h>

#include <map>

#include "iftt_pin/policies.hpp"

using namespace iftt;

TEST(Policies, RandomBalancedIsHalfAndHalf)
{
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(random_balanced_coloring(rng).yellow().size(), 5);
}

TEST(Policies, SameSeedSameSequence)
{
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(random_balanced_coloring(a), random_balanced_coloring(b));
    auto x = Rng::derive(42, {3, 5});
    auto y = Rng::derive(42, {3, 5});
    auto z = Rng::derive(42, {5, 3});
    EXPECT_EQ(x.next(), y.next());
    EXPECT_NE(Rng::derive(42, {3, 5}).next(), z.next());
}

TEST(Policies, RngKnownValues)
{
    // SplitMix64 reference outputs for seed 0.
    Rng rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Policies, RandomBalancedUniformOverSplits)
{
    // Chi-square over the C(10,5) = 252 splits; 0.999 quantile of chi2(251)
    // is 325.97 (scipy.stats.chi2.ppf), i.e. p > 0.001 passes.
    constexpr int kDraws = 100000;
    Rng rng(12345);
    std::map<std::uint16_t, int> counts;
    for (int i = 0; i < kDraws; ++i) ++counts[random_balanced_coloring(rng).yellow().mask()];
    ASSERT_EQ(counts.size(), 252U);
    const double expected = static_cast<double>(kDraws) / 252.0;
    double stat = 0.0;
    for (const auto& [mask, n] : counts) stat += (n - expected) * (n - expected) / expected;
    EXPECT_LT(stat, 325.97);
}

TEST(Policies, BisectSplitsCandidates)
{
    Rng rng(3);
    auto all = bisect_coloring(DigitSet::all(), rng);
    EXPECT_EQ(all.yellow().size(), 5);

    auto cand = DigitSet::of({2, 3, 4});
    int yellow_larger = 0;
    for (int i = 0; i < 200; ++i) {
        auto c = bisect_coloring(cand, rng);
        EXPECT_EQ(c.yellow().size(), 5);
        int y = (c.yellow() & cand).size();
        EXPECT_TRUE(y == 1 || y == 2);
        yellow_larger += y == 2;
    }
    EXPECT_GT(yellow_larger, 0);
    EXPECT_LT(yellow_larger, 200);
}

TEST(Policies, BisectProgress)
{
    Rng rng(8);
    for (int mask = 1; mask < 1024; ++mask) {
        auto cand = DigitSet::from_mask(static_cast<std::uint16_t>(mask));
        if (cand.size() < 2) continue;
        auto c = bisect_coloring(cand, rng);
        int half = (cand.size() + 1) / 2;
        EXPECT_LE((c.yellow() & cand).size(), half);
        EXPECT_LE((c.grey() & cand).size(), half);
    }
}

TEST(Policies, NextColoringDispatch)
{
    Rng rng(5);
    EXPECT_EQ(next_coloring(PolicyKind::RandomBalanced, DigitSet::of({7}), rng).yellow().size(), 5);
    auto c = next_coloring(PolicyKind::Bisect, DigitSet::all(), rng);
    EXPECT_EQ(c.yellow().size(), 5);
    try {
        next_coloring(PolicyKind::Bisect, DigitSet::of({7}), rng);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NothingToSplit);
    }
    EXPECT_EQ(policy_from_string("bisect"), PolicyKind::Bisect);
    EXPECT_EQ(to_string(PolicyKind::RandomBalanced), "random_balanced");
    EXPECT_THROW(policy_from_string("greedy"), Error);
}
