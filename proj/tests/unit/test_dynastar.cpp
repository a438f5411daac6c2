#include "dynsearch/dynastar.hpp"
#include "dynsearch/examples.hpp"
#include "dynsearch/oracle.hpp"
#include "dynsearch/verify.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace dynsearch;
using testing_support::units;

namespace {

std::string names(const TransitionSystem& ts, const std::vector<StateId>& states) {
    std::string out;
    for (StateId s : states) {
        out += ts.state_name(s);
    }
    return out;
}

std::vector<std::int64_t> as_units(const std::vector<Cost>& costs) {
    std::vector<std::int64_t> out;
    for (Cost c : costs) {
        out.push_back(c.units());
    }
    return out;
}

template <class E>
std::vector<E> events_of(const Trace& trace) {
    std::vector<E> out;
    for (const auto& e : trace) {
        if (const auto* x = std::get_if<E>(&e.data)) {
            out.push_back(*x);
        }
    }
    return out;
}

OpenEntry entry(const TransitionSystem& ts, std::string_view s, std::int64_t g, std::int64_t h) {
    return {ts.state(s), units(g), units(h), 0};
}

bool same_entries(std::vector<OpenEntry> actual, std::vector<OpenEntry> expected) {
    auto key = [](const OpenEntry& e) { return std::tuple(index(e.state), e.g, e.h); };
    auto less = [&](const OpenEntry& a, const OpenEntry& b) { return key(a) < key(b); };
    std::sort(actual.begin(), actual.end(), less);
    std::sort(expected.begin(), expected.end(), less);
    return std::equal(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      [&](const OpenEntry& a, const OpenEntry& b) { return key(a) == key(b); });
}

}  // namespace

TEST(DynAStar, RunningExampleWithHlm) {
    const TransitionSystem ts = running_example();
    const SearchResult r = search(ts, *hlm(ts));
    ASSERT_EQ(r.outcome, Outcome::Solution);
    EXPECT_EQ(r.cost, units(3));
    EXPECT_EQ(r.path, (Path{ts.transition("A", "y", "C"), ts.transition("C", "x", "D")}));
    EXPECT_TRUE(r.conforming);
}

TEST(DynAStar, ReopeningExampleWithoutReevaluation) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts), {.reeval = false, .reopen = true});
    ASSERT_EQ(r.outcome, Outcome::Solution);
    EXPECT_EQ(r.cost, units(7));
    EXPECT_EQ(names(ts, expansion_order(r.trace)), "ABCDEDF");
    EXPECT_EQ(as_units(popped_f_values(r.trace)), (std::vector<std::int64_t>{1, 2, 3, 6, 7, 7, 7}));

    const auto reopens = events_of<ev::Reopen>(r.trace);
    ASSERT_EQ(reopens.size(), 1u);
    EXPECT_EQ(reopens[0], (ev::Reopen{ts.state("D"), units(6), units(4)}));
    EXPECT_EQ(r.stats.reopenings, 1u);

    const auto after_c = end_of_expansion(r.trace, ts.state("C"));
    ASSERT_TRUE(after_c.has_value());
    EXPECT_TRUE(same_entries(open_snapshot(r.trace, *after_c),
                             {entry(ts, "D", 6, 0), entry(ts, "E", 3, 4), entry(ts, "F", 8, 0)}));
    EXPECT_EQ(r.path, (Path{ts.transition("A", "c2", "C"), ts.transition("C", "c1", "E"),
                            ts.transition("E", "c1", "D"), ts.transition("D", "c3", "F")}));
}

TEST(DynAStar, ReopeningExampleWithoutReopening) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts), {.reeval = false, .reopen = false});
    ASSERT_EQ(r.outcome, Outcome::Solution);
    EXPECT_EQ(r.cost, units(8));
    EXPECT_EQ(r.path, (Path{ts.transition("A", "c8", "F")}));
    EXPECT_FALSE(r.conforming);
    EXPECT_EQ(reopen_count(r.trace), 0u);
}

TEST(DynAStar, ReopeningExampleWithReevaluation) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts), {.reeval = true});
    ASSERT_EQ(r.outcome, Outcome::Solution);
    EXPECT_EQ(r.cost, units(7));
    EXPECT_EQ(reopen_count(r.trace), 0u);
    EXPECT_EQ(names(ts, expansion_order(r.trace)), "ABCEDF");

    const auto reevals = events_of<ev::Reevaluate>(r.trace);
    ASSERT_EQ(reevals.size(), 1u);
    EXPECT_EQ(reevals[0], (ev::Reevaluate{ts.state("D"), Cost::zero(), units(3)}));
    bool reinserted = false;
    for (const auto& ins : events_of<ev::Insert>(r.trace)) {
        if (ins.reason == InsertReason::Reeval) {
            EXPECT_EQ(ins.entry.state, ts.state("D"));
            EXPECT_EQ(ins.entry.g, units(6));
            EXPECT_EQ(ins.entry.h, units(3));
            EXPECT_EQ(ins.entry.f(), units(9));
            reinserted = true;
        }
    }
    EXPECT_TRUE(reinserted);

    std::vector<std::int64_t> expanded_g;
    for (const auto& x : events_of<ev::Expand>(r.trace)) {
        expanded_g.push_back(x.g.units());
    }
    EXPECT_EQ(expanded_g, (std::vector<std::int64_t>{0, 1, 2, 3, 4, 7}));
}

TEST(DynAStar, GoalFreeIsUnsolvable) {
    const TransitionSystem ts = parse("ts-format 1\nlabel a 1\nstate A B C\ninit A\ngoal\ntrans A a B\ntrans B a C\ntrans C a A\n");
    const SearchResult r = search(ts, *static_adapter(CostTable{{Cost::zero(), Cost::zero(), Cost::zero()}}));
    EXPECT_EQ(r.outcome, Outcome::Unsolvable);
    EXPECT_TRUE(r.path.empty());
    EXPECT_EQ(r.stats.expansions, 3u);
}

TEST(DynAStar, InfiniteInitialHeuristicIsPruned) {
    const TransitionSystem ts = parse("ts-format 1\nstate A B\ninit A\ngoal B\n");
    const SearchResult r = search(ts, *heuristic_from_spec("hstar", ts));
    EXPECT_EQ(r.outcome, Outcome::Unsolvable);
    ASSERT_EQ(r.trace.size(), 2u);
    EXPECT_EQ(std::get<ev::Prune>(r.trace[0].data), (ev::Prune{ts.init(), PruneWhere::Initial}));
    EXPECT_TRUE(std::holds_alternative<ev::Return>(r.trace[1].data));
}

TEST(DynAStar, DeadEndSuccessorsArePruned) {
    const TransitionSystem ts = parse("ts-format 1\nlabel a 1\nstate A B C\ninit A\ngoal C\ntrans A a B\ntrans A a C\n");
    const SearchResult r = search(ts, *heuristic_from_spec("hstar", ts));
    EXPECT_EQ(r.cost, units(1));
    const auto prunes = events_of<ev::Prune>(r.trace);
    ASSERT_EQ(prunes.size(), 1u);
    EXPECT_EQ(prunes[0], (ev::Prune{ts.state("B"), PruneWhere::Successor}));
}

TEST(DynAStar, InitialGoal) {
    const TransitionSystem ts = parse("ts-format 1\nlabel a 1\nstate A B\ninit A\ngoal A\ntrans A a B\n");
    const SearchResult r = search(ts, *hlm(ts));
    EXPECT_EQ(r.outcome, Outcome::Solution);
    EXPECT_EQ(r.cost, Cost::zero());
    EXPECT_TRUE(r.path.empty());
    EXPECT_TRUE(optex(r.trace, ts).holds);
}

TEST(DynAStar, StepLimitCountsPops) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts), {.step_limit = 3});
    EXPECT_EQ(r.outcome, Outcome::StepLimit);
    EXPECT_EQ(r.stats.pops, 3u);
    EXPECT_TRUE(std::holds_alternative<ev::Return>(r.trace.back().data));
    EXPECT_EQ(search(ts, *reopening_heuristic(ts), {.step_limit = 0}).outcome, Outcome::StepLimit);
}

TEST(DynAStar, Timestamps) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts));
    Time last{};
    std::uint64_t updates_this_iteration = 0;
    for (const auto& e : r.trace) {
        EXPECT_LE(last, e.t);
        if (e.t.i != last.i) {
            updates_this_iteration = 0;
        }
        last = e.t;
        if (std::holds_alternative<ev::Pop>(e.data)) {
            EXPECT_EQ(e.t.j, 0u);
        }
        if (std::holds_alternative<ev::Refine>(e.data)) {
            EXPECT_EQ(e.t.j, 1u);
        }
        if (std::holds_alternative<ev::Update>(e.data)) {
            EXPECT_EQ(e.t.j, 2 + updates_this_iteration++);
        }
    }
    EXPECT_LT((Time{1, 5}), (Time{2, 0}));
    EXPECT_LT((Time{2, 0}), (Time{2, 1}));
}

TEST(DynAStar, TieBreaking) {
    EXPECT_TRUE(pops_before({state_id(0), units(1), units(2), 5}, {state_id(1), units(2), units(2), 0}));
    EXPECT_TRUE(pops_before({state_id(0), units(3), units(1), 5}, {state_id(1), units(2), units(2), 0}));
    EXPECT_TRUE(pops_before({state_id(0), units(2), units(2), 1}, {state_id(1), units(2), units(2), 2}));
    EXPECT_FALSE(pops_before({state_id(0), units(2), units(2), 2}, {state_id(1), units(2), units(2), 1}));
}

TEST(DynAStar, TraceJsonRoundTrip) {
    const TransitionSystem ts = reopening_example();
    for (bool reeval : {false, true}) {
        const SearchResult r = search(ts, *reopening_heuristic(ts), {.reeval = reeval});
        const std::string text = write_trace(r.trace, ts);
        EXPECT_EQ(read_trace(text, ts), r.trace);
        const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
        EXPECT_EQ(first["t"], nlohmann::json::array({0, 0}));
        EXPECT_EQ(first["event"], "insert");
    }
    EXPECT_THROW(read_trace("{\"t\": [0, 0], \"event\": \"insert\"}\nnot json\n", ts), ParseError);
    try {
        read_trace("{\"t\":[1,0],\"event\":\"pop\",\"state\":\"A\",\"g\":0,\"h\":1,\"seq\":0}\n{\"event\": \"bogus\"}\n", ts);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(DynAStar, NoTraceWhenDisabled) {
    const TransitionSystem ts = reopening_example();
    const SearchResult r = search(ts, *reopening_heuristic(ts), {.record_trace = false});
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(r.cost, units(7));
    EXPECT_EQ(r.stats.reopenings, 1u);
}

TEST(DynAStar, Deterministic) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed);
        const auto h1 = oracle_family(ts, OracleFlavor::AdmissibleOnly, seed);
        const auto h2 = oracle_family(ts, OracleFlavor::AdmissibleOnly, seed);
        EXPECT_EQ(write_trace(search(ts, *h1).trace, ts), write_trace(search(ts, *h2).trace, ts));
    }
}

namespace {

void check_trace_invariants(const TransitionSystem& ts, const SearchResult& r, std::uint64_t seed) {
    std::vector<bool> closed(ts.num_states(), false);
    std::vector<bool> open_reopen_ready(ts.num_states(), false);
    std::optional<StateId> popped;
    std::uint64_t iteration = 0;
    for (const auto& e : r.trace) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, ev::Pop>) {
                    popped = x.entry.state;
                    iteration = e.t.i;
                } else if constexpr (std::is_same_v<T, ev::Close>) {
                    closed[index(x.state)] = true;
                } else if constexpr (std::is_same_v<T, ev::Reopen>) {
                    EXPECT_TRUE(closed[index(x.state)]) << "seed " << seed;
                    EXPECT_LT(x.new_g, x.old_g);
                    closed[index(x.state)] = false;
                } else if constexpr (std::is_same_v<T, ev::Insert>) {
                    EXPECT_FALSE(closed[index(x.entry.state)]) << "seed " << seed;
                    EXPECT_TRUE(x.entry.h.is_finite());
                } else if constexpr (std::is_same_v<T, ev::Expand>) {
                    EXPECT_EQ(popped, x.state) << "seed " << seed;
                    EXPECT_EQ(iteration, e.t.i) << "seed " << seed;
                } else if constexpr (std::is_same_v<T, ev::DuplicateDrop>) {
                    EXPECT_TRUE(closed[index(x.entry.state)]);
                }
            },
            e.data);
    }
    if (r.outcome == Outcome::Solution) {
        EXPECT_EQ(path_cost(ts, r.path), r.cost);
        if (!r.path.empty()) {
            EXPECT_EQ(r.path.front().origin, ts.init());
            EXPECT_TRUE(ts.is_goal(r.path.back().target));
        } else {
            EXPECT_TRUE(ts.is_goal(ts.init()));
        }
        const auto pops = events_of<ev::Pop>(r.trace);
        EXPECT_LE(r.cost, pops.back().entry.g);
    }
}

}  // namespace

// Optimality with dyn-admissible heuristics, solvability with dyn-safe ones,
// trace invariants on everything.
TEST(DynAStarProperty, RandomInstances) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 10, 30, 9);
        const Cost optimum = optimal_solution_cost(ts);
        const std::vector<HeuristicPtr> admissible{oracle_family(ts, OracleFlavor::AdmissibleOnly, seed),
                                                   oracle_family(ts, OracleFlavor::ConsistentMonotone, seed),
                                                   hlm(ts), static_adapter(hstar_all(ts)),
                                                   heuristic_from_spec("lazy-half", ts)};
        for (const auto& h : admissible) {
            for (bool reeval : {false, true}) {
                const SearchResult r = search(ts, *h, {.reeval = reeval});
                check_trace_invariants(ts, r, seed);
                if (optimum.is_infinite()) {
                    EXPECT_EQ(r.outcome, Outcome::Unsolvable) << "seed " << seed << " " << h->name();
                } else {
                    ASSERT_EQ(r.outcome, Outcome::Solution) << "seed " << seed << " " << h->name();
                    EXPECT_EQ(r.cost, optimum) << "seed " << seed << " " << h->name() << " reeval " << reeval;
                }
            }
        }
        // safe but inadmissible: solvability still agrees
        CostTable inflated = hstar_all(ts);
        for (auto& c : inflated.values) {
            if (c.is_finite()) {
                c = c + c + units(3);
            }
        }
        const SearchResult r = search(ts, *static_adapter(inflated));
        check_trace_invariants(ts, r, seed);
        EXPECT_EQ(r.outcome == Outcome::Solution, optimum.is_finite()) << "seed " << seed;
    }
}

TEST(DynAStarProperty, StaticHeuristicsIgnoreReeval) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 10, 30, 9);
        std::mt19937_64 rng(seed);
        CostTable table = hstar_all(ts);
        for (auto& c : table.values) {
            c = rng() % 2 ? subtract_clamped(c, units(static_cast<std::int64_t>(rng() % 4))) : units(static_cast<std::int64_t>(rng() % 9));
        }
        const auto h = static_adapter(table);
        EXPECT_EQ(write_trace(search(ts, *h, {.reeval = false}).trace, ts),
                  write_trace(search(ts, *h, {.reeval = true}).trace, ts))
            << "seed " << seed;
        const auto lazy_same = lazy_heuristic(table, table, ts);
        EXPECT_EQ(write_trace(search(ts, *lazy_same, {.reeval = false}).trace, ts),
                  write_trace(search(ts, *lazy_same, {.reeval = true}).trace, ts))
            << "seed " << seed;
    }
}
