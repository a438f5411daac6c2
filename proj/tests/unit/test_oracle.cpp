#include "dynsearch/examples.hpp"
#include "dynsearch/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace dynsearch;
using testing_support::units;

namespace {

std::map<std::string, std::string> as_map(const TransitionSystem& ts, const CostTable& table) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < ts.num_states(); ++i) {
        out[ts.state_name(state_id(i))] = format_cost(table.values[i]);
    }
    return out;
}

}  // namespace

TEST(Oracle, RunningExampleTables) {
    const TransitionSystem ts = running_example();
    EXPECT_EQ(as_map(ts, gstar_all(ts)),
              (std::map<std::string, std::string>{{"A", "0"}, {"B", "1"}, {"C", "2"}, {"D", "3"}}));
    EXPECT_EQ(as_map(ts, hstar_all(ts)),
              (std::map<std::string, std::string>{{"A", "3"}, {"B", "3"}, {"C", "1"}, {"D", "0"}}));
    EXPECT_EQ(optimal_solution_cost(ts), units(3));
}

TEST(Oracle, ReopeningExampleTables) {
    const TransitionSystem ts = reopening_example();
    EXPECT_EQ(as_map(ts, gstar_all(ts)),
              (std::map<std::string, std::string>{
                  {"A", "0"}, {"B", "1"}, {"C", "2"}, {"D", "4"}, {"E", "3"}, {"F", "7"}}));
    EXPECT_EQ(as_map(ts, hstar_all(ts)),
              (std::map<std::string, std::string>{
                  {"A", "7"}, {"B", "8"}, {"C", "5"}, {"D", "3"}, {"E", "4"}, {"F", "0"}}));
    EXPECT_EQ(optimal_solution_cost(ts), units(7));
}

TEST(Oracle, GoalFreeIsUnsolvable) {
    const TransitionSystem ts = parse("ts-format 1\nlabel a 1\nstate A B C\ninit A\ngoal\ntrans A a B\ntrans B a C\n");
    EXPECT_TRUE(optimal_solution_cost(ts).is_infinite());
    for (Cost c : hstar_all(ts).values) {
        EXPECT_TRUE(c.is_infinite());
    }
}

TEST(Oracle, UnreachableAndDeadEnd) {
    const TransitionSystem ts = parse("ts-format 1\nlabel a 2\nstate A B C D\ninit A\ngoal B\n"
                                      "trans A a B\ntrans A a C\ntrans D a B\n");
    const CostTable g = gstar_all(ts);
    const CostTable h = hstar_all(ts);
    EXPECT_TRUE(g[ts.state("D")].is_infinite());
    EXPECT_EQ(h[ts.state("D")], units(2));
    EXPECT_TRUE(h[ts.state("C")].is_infinite());
    EXPECT_EQ(g[ts.state("C")], units(2));
}

TEST(Oracle, ZeroCostCycles) {
    const TransitionSystem ts = parse("ts-format 1\nlabel z 0\nlabel a 3\nstate A B C\ninit A\ngoal C\n"
                                      "trans A z B\ntrans B z A\ntrans B a C\n");
    EXPECT_EQ(optimal_solution_cost(ts), units(3));
    EXPECT_EQ(gstar_all(ts)[ts.state("B")], Cost::zero());
}

TEST(OracleProperty, AgreesWithSimplePathEnumeration) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 10, 24);
        const CostTable g = gstar_all(ts);
        const CostTable h = hstar_all(ts);
        for (std::size_t i = 0; i < ts.num_states(); ++i) {
            const StateId s = state_id(i);
            EXPECT_EQ(g[s], testing_support::brute_force_gstar(ts, s)) << "seed " << seed;
            EXPECT_EQ(h[s], testing_support::brute_force_hstar(ts, s)) << "seed " << seed;
        }
    }
}

TEST(OracleProperty, HstarIsConsistent) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed);
        const CostTable h = hstar_all(ts);
        for (const auto& t : ts.transitions()) {
            EXPECT_LE(h[t.origin], ts.cost(t) + h[t.target]) << "seed " << seed;
        }
        for (StateId goal : ts.goals()) {
            EXPECT_EQ(h[goal], Cost::zero());
        }
        EXPECT_EQ(gstar_all(ts)[ts.init()], Cost::zero());
    }
}

TEST(OracleProperty, OptimalPathStatesSumToOptimum) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed);
        const Cost opt = optimal_solution_cost(ts);
        const CostTable g = gstar_all(ts);
        const CostTable h = hstar_all(ts);
        for (std::size_t i = 0; i < ts.num_states(); ++i) {
            const StateId s = state_id(i);
            EXPECT_GE(g[s] + h[s], opt) << "seed " << seed;
        }
        if (opt.is_finite()) {
            EXPECT_EQ(g[ts.init()] + h[ts.init()], opt);
        }
    }
}

TEST(OracleProperty, AllPairsMatchesSingleSource) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed);
        const auto rows = all_pairs_costs(ts);
        ASSERT_EQ(rows.size(), ts.num_states());
        EXPECT_EQ(rows[index(ts.init())], gstar_all(ts));
        for (std::size_t i = 0; i < ts.num_states(); ++i) {
            EXPECT_EQ(rows[i], distances_from(ts, state_id(i)));
            EXPECT_EQ(rows[i][state_id(i)], Cost::zero());
        }
    }
}
