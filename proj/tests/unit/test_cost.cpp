#include "dynsearch/cost.hpp"

#include <gtest/gtest.h>

#include <random>

using dynsearch::Cost;
using dynsearch::format_cost;
using dynsearch::kInfinity;
using dynsearch::parse_cost;

TEST(Cost, InfinityAbsorbsAdditionAndDominates) {
    EXPECT_EQ(kInfinity + Cost::from_units(3), kInfinity);
    EXPECT_EQ(Cost::from_units(3) + kInfinity, kInfinity);
    EXPECT_EQ(kInfinity + kInfinity, kInfinity);
    EXPECT_GT(kInfinity, Cost::from_units(std::numeric_limits<Cost::Rep>::max() - 1));
    EXPECT_TRUE(kInfinity.is_infinite());
    EXPECT_FALSE(Cost::zero().is_infinite());
}

TEST(Cost, RejectsNegativeUnitsAndOverflow) {
    EXPECT_THROW(Cost::from_units(-1), std::invalid_argument);
    const Cost big = Cost::from_units(std::numeric_limits<Cost::Rep>::max() - 5);
    EXPECT_THROW(big + big, std::overflow_error);
    EXPECT_THROW(kInfinity.units(), std::logic_error);
}

TEST(Cost, SubtractClamped) {
    EXPECT_EQ(subtract_clamped(Cost::from_units(5), Cost::from_units(2)), Cost::from_units(3));
    EXPECT_EQ(subtract_clamped(Cost::from_units(2), Cost::from_units(5)), Cost::zero());
    EXPECT_EQ(subtract_clamped(kInfinity, Cost::from_units(5)), kInfinity);
}

TEST(CostLiteral, ParsesIntegersDecimalsAndInf) {
    EXPECT_EQ(parse_cost("7"), Cost::from_units(7));
    EXPECT_EQ(parse_cost("inf"), kInfinity);
    EXPECT_EQ(parse_cost("1.25", 100), Cost::from_units(125));
    EXPECT_EQ(parse_cost("3", 100), Cost::from_units(300));
    EXPECT_EQ(parse_cost("0.5", 100), Cost::from_units(50));
    EXPECT_EQ(dynsearch::decimal_places("1.250"), 3);
    EXPECT_EQ(dynsearch::decimal_places("4"), 0);
}

TEST(CostLiteral, RejectsMalformedInput) {
    for (const char* bad : {"", "-1", "1.2.3", "abc", "1e3", ".", "1.", "+2"}) {
        EXPECT_THROW(parse_cost(bad, 10), std::invalid_argument) << bad;
    }
    EXPECT_THROW(parse_cost("1.25", 10), std::invalid_argument);
}

TEST(CostLiteral, FormatIsInverseOfParse) {
    EXPECT_EQ(format_cost(Cost::from_units(125), 100), "1.25");
    EXPECT_EQ(format_cost(Cost::from_units(300), 100), "3");
    EXPECT_EQ(format_cost(Cost::from_units(5), 100), "0.05");
    EXPECT_EQ(format_cost(kInfinity, 100), "inf");

    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        const std::int64_t scales[] = {1, 10, 100, 1000};
        const std::int64_t s = scales[rng() % 4];
        const Cost c = Cost::from_units(static_cast<Cost::Rep>(rng() % 1'000'000));
        EXPECT_EQ(parse_cost(format_cost(c, s), s), c);
    }
}

TEST(Cost, AdditionIsExactAndOrderPreserving) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 1000; ++k) {
        const auto a = static_cast<Cost::Rep>(rng() % 1'000'000'000);
        const auto b = static_cast<Cost::Rep>(rng() % 1'000'000'000);
        const auto c = static_cast<Cost::Rep>(rng() % 1'000'000'000);
        EXPECT_EQ((Cost::from_units(a) + Cost::from_units(b)).units(), a + b);
        EXPECT_EQ(Cost::from_units(a) < Cost::from_units(b), a < b);
        EXPECT_EQ((Cost::from_units(a) + Cost::from_units(b)) + Cost::from_units(c),
                  Cost::from_units(a) + (Cost::from_units(b) + Cost::from_units(c)));
    }
}
