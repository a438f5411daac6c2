#include "dynsearch/examples.hpp"
#include "dynsearch/sources.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dynsearch;
using testing_support::units;

namespace {

LandmarkSet lm(const TransitionSystem& ts, std::initializer_list<std::string_view> names) {
    return make_landmark_set(ts, names);
}

const std::optional<LandmarkSet>& lm_at(const Info& info, const TransitionSystem& ts, std::string_view s) {
    return info.get<LandmarkMap>().at(ts.state(s));
}

std::shared_ptr<const LandmarkSource> fig1_landmarks(const TransitionSystem& ts) {
    return landmark_source(ts, lm(ts, {"x", "y"}));
}

}  // namespace

TEST(LandmarkProgression, UpdateAlongAxB) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    const Info i0 = src->initial();
    const Info i1 = src->update(i0, ts.transition("A", "x", "B"));
    EXPECT_EQ(lm_at(i1, ts, "A"), lm(ts, {"x", "y"}));
    EXPECT_EQ(lm_at(i1, ts, "B"), lm(ts, {"y"}));
    EXPECT_FALSE(lm_at(i1, ts, "C").has_value());
    // the original object is untouched
    EXPECT_FALSE(lm_at(i0, ts, "B").has_value());
}

TEST(LandmarkProgression, MergeIsUnion) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    Info info = src->update(src->initial(), ts.transition("A", "x", "B"));
    info = src->update(info, ts.transition("B", "y", "C"));
    EXPECT_EQ(lm_at(info, ts, "C"), lm(ts, {}));
    info = src->update(info, ts.transition("A", "y", "C"));
    EXPECT_EQ(lm_at(info, ts, "C"), lm(ts, {"x"}));

    const LandmarkProgression p(lm(ts, {"x", "y"}));
    EXPECT_EQ(p.merge(lm(ts, {"y"}), lm(ts, {"x"})), lm(ts, {"x", "y"}));
    EXPECT_EQ(p.progress(lm(ts, {}), ts.transition("C", "x", "D")), lm(ts, {}));
    EXPECT_EQ(p.progress(lm(ts, {"x", "y"}), ts.transition("A", "x", "B")), lm(ts, {"y"}));
}

TEST(ProgressionSource, RefineIsIdentity) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    Info info = src->update(src->initial(), ts.transition("A", "y", "C"));
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        EXPECT_EQ(src->refine(info, state_id(s)), info);
    }
}

TEST(ProgressionSource, UpdateFromUndefinedOriginIsContractViolation) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    EXPECT_THROW(src->update(src->initial(), ts.transition("C", "x", "D")), ContractViolation);
}

TEST(ParentSource, ProgressAndMerge) {
    const TransitionSystem ts = running_example();
    const ParentProgression p(ts);
    const Transition ay = ts.transition("A", "y", "C");
    const Transition ax = ts.transition("A", "x", "B");
    const Transition by = ts.transition("B", "y", "C");
    EXPECT_EQ(p.progress({Cost::zero(), std::nullopt}, ay), (ParentPayload{units(2), ay}));
    EXPECT_EQ(p.merge({units(3), ax}, {units(2), by}), (ParentPayload{units(2), by}));
    EXPECT_EQ(p.merge({units(2), ax}, {units(2), by}), (ParentPayload{units(2), ax}));
}

TEST(ParentSource, ExtractPath) {
    const TransitionSystem ts = running_example();
    const auto src = parent_source(ts);
    EXPECT_TRUE(extract_path(src->initial(), ts.init()).empty());

    Info info = src->update(src->initial(), ts.transition("A", "y", "C"));
    info = src->update(info, ts.transition("C", "x", "D"));
    const Path path = extract_path(info, ts.state("D"));
    EXPECT_EQ(path, (Path{ts.transition("A", "y", "C"), ts.transition("C", "x", "D")}));
    EXPECT_EQ(path_cost(ts, path), units(3));
    EXPECT_EQ(stored_g(info, ts.state("D")), units(3));
    EXPECT_FALSE(stored_g(info, ts.state("B")).has_value());
    EXPECT_THROW(extract_path(info, ts.state("B")), ContractViolation);
}

TEST(ParentSource, CheaperPathMergeOnDiamond) {
    const TransitionSystem ts = parse("ts-format 1\nlabel one 1\nlabel five 5\nstate S L R T\ninit S\ngoal T\n"
                                      "trans S five L\ntrans S one R\ntrans L one T\ntrans R one T\n");
    const auto src = parent_source(ts);
    Info info = src->update(src->initial(), ts.transition("S", "five", "L"));
    info = src->update(info, ts.transition("L", "one", "T"));
    EXPECT_EQ(stored_g(info, ts.state("T")), units(6));
    info = src->update(info, ts.transition("S", "one", "R"));
    info = src->update(info, ts.transition("R", "one", "T"));
    EXPECT_EQ(stored_g(info, ts.state("T")), units(2));
    EXPECT_EQ(path_cost(ts, extract_path(info, ts.state("T"))), units(2));
}

TEST(LazySource, CheapUntilRefined) {
    const TransitionSystem ts = running_example();
    const auto src = lazy_source(ts);
    const Info i0 = src->initial();
    for (Evaluator e : i0.get<EvaluatorMap>().which) {
        EXPECT_EQ(e, Evaluator::Cheap);
    }
    const Info i1 = src->refine(i0, ts.state("A"));
    const auto& which = i1.get<EvaluatorMap>().which;
    EXPECT_EQ(which[index(ts.state("A"))], Evaluator::Accurate);
    for (std::string_view s : {"B", "C", "D"}) {
        EXPECT_EQ(which[index(ts.state(s))], Evaluator::Cheap);
    }
    EXPECT_EQ(src->update(i1, ts.transition("A", "x", "B")), i1);
}

TEST(ScriptedSource, ReopeningTriggers) {
    const TransitionSystem ts = reopening_example();
    const ScriptedSpec spec = parse_triggers(ts, reopening_triggers_text());
    const auto src = scripted_source(spec);
    const Info i0 = src->initial();
    auto value = [&](const Info& info, std::string_view s) { return info.get<StateValues>().values[index(ts.state(s))]; };
    EXPECT_EQ(value(i0, "A"), units(1));
    EXPECT_EQ(value(i0, "B"), Cost::zero());

    const Info i1 = src->update(i0, ts.transition("A", "c1", "B"));
    EXPECT_EQ(value(i1, "B"), units(1));
    // non-trigger transition
    EXPECT_EQ(src->update(i0, ts.transition("A", "c8", "F")), i0);
    // idempotent
    EXPECT_EQ(src->update(i1, ts.transition("A", "c1", "B")), i1);
    EXPECT_EQ(src->refine(i1, ts.state("B")), i1);
}

TEST(ScriptedSource, ArrayFormAndErrors) {
    const TransitionSystem ts = reopening_example();
    const ScriptedSpec spec = parse_triggers(ts, R"([{"on": ["A", "c1", "B"], "state": "B", "h": 2}])");
    EXPECT_EQ(spec.triggers.size(), 1u);
    EXPECT_EQ(spec.initial_values, std::vector<Cost>(ts.num_states(), Cost::zero()));
    EXPECT_THROW(parse_triggers(ts, R"([{"on": ["A", "c1", "F"], "state": "B", "h": 2}])"), ParseError);
    EXPECT_THROW(parse_triggers(ts, R"([{"on": ["A", "c1", "B"], "state": "Q", "h": 2}])"), ParseError);
    EXPECT_THROW(parse_triggers(ts, "[1"), ParseError);
}

TEST(Reachable, DepthZeroIsInitialOnly) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    const ReachableSet set = enumerate_reachable_infos(ts, *src, {.depth_bound = 0, .size_cap = 100});
    ASSERT_EQ(set.infos.size(), 1u);
    EXPECT_EQ(set.infos[0].info, src->initial());
    EXPECT_TRUE(set.infos[0].witness.empty());
}

TEST(Reachable, DepthOneOnRunningExample) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    const ReachableSet set = enumerate_reachable_infos(ts, *src, {.depth_bound = 1, .size_cap = 100});
    auto contains = [&](const Info& info) {
        return std::any_of(set.infos.begin(), set.infos.end(), [&](const ReachableInfo& r) { return r.info == info; });
    };
    const Info i0 = src->initial();
    EXPECT_TRUE(contains(i0));
    EXPECT_TRUE(contains(src->update(i0, ts.transition("A", "x", "B"))));
    EXPECT_TRUE(contains(src->update(i0, ts.transition("A", "y", "C"))));
    EXPECT_EQ(set.infos.size(), 3u);

    // {A -> {x,y}, B -> {x,y}} would need information about B without reaching it
    LandmarkMap forged = i0.get<LandmarkMap>();
    forged.entries[index(ts.state("B"))] = lm(ts, {"x", "y"});
    EXPECT_FALSE(contains(Info::make(forged)));
}

TEST(Reachable, DisciplineValidator) {
    const TransitionSystem ts = running_example();
    const std::vector<InfoEvent> ok{ts.transition("A", "x", "B"), ts.state("B"), ts.transition("B", "y", "C")};
    EXPECT_TRUE(is_disciplined(ts, ok));
    const std::vector<InfoEvent> refine_unknown{ts.state("B")};
    EXPECT_FALSE(is_disciplined(ts, refine_unknown));
    const std::vector<InfoEvent> update_unknown{ts.transition("B", "y", "C")};
    EXPECT_FALSE(is_disciplined(ts, update_unknown));
}

TEST(Reachable, CapIsEnforced) {
    const TransitionSystem ts = reopening_example();
    const auto src = parent_source(ts);
    EXPECT_THROW(enumerate_reachable_infos(ts, *src, {.depth_bound = 14, .size_cap = 5}), LimitExceeded);
}

TEST(Reachable, ExhaustedFlag) {
    const TransitionSystem ts = running_example();
    const auto src = fig1_landmarks(ts);
    EXPECT_TRUE(enumerate_reachable_infos(ts, *src, {.depth_bound = 12, .size_cap = 10000}).exhausted);
    EXPECT_FALSE(enumerate_reachable_infos(ts, *src, {.depth_bound = 1, .size_cap = 10000}).exhausted);
}

// Every enumerated object is witnessed by a disciplined sequence that replays to it.
TEST(ReachableProperty, WitnessesReplay) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 5, 8, 3);
        const auto parents = parent_source(ts);
        const auto landmarks = landmark_source(ts, compute_label_landmarks(ts, ts.init()));
        for (const InformationSource* src : std::initializer_list<const InformationSource*>{parents.get(), landmarks.get()}) {
            const ReachableSet set = enumerate_reachable_infos(ts, *src, {.depth_bound = 5, .size_cap = 200000});
            for (const auto& r : set.infos) {
                EXPECT_TRUE(is_disciplined(ts, r.witness)) << "seed " << seed;
                EXPECT_EQ(replay(*src, r.witness), r.info) << "seed " << seed;
            }
            for (const auto& node : set.nodes) {
                EXPECT_EQ(replay(*src, node.witness), set.infos[node.info_index].info);
            }
        }
    }
}

// Refine is the identity and extracted paths never cost more than the stored g.
TEST(ReachableProperty, ParentSourceInvariants) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 5, 8, 3);
        const auto src = parent_source(ts);
        const ReachableSet set = enumerate_reachable_infos(ts, *src, {.depth_bound = 5, .size_cap = 200000});
        for (const auto& r : set.infos) {
            for (std::size_t i = 0; i < ts.num_states(); ++i) {
                const StateId s = state_id(i);
                EXPECT_EQ(src->refine(r.info, s), r.info);
                if (const auto g = stored_g(r.info, s)) {
                    const Path p = extract_path(r.info, s);
                    EXPECT_LE(path_cost(ts, p), *g) << "seed " << seed;
                    if (!p.empty()) {
                        EXPECT_EQ(p.front().origin, ts.init());
                        EXPECT_EQ(p.back().target, s);
                    }
                }
            }
        }
    }
}

// Scripted values never decrease along random disciplined event sequences.
TEST(ScriptedProperty, ValuesNeverDecrease) {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const TransitionSystem ts = testing_support::small_instance(seed, 6, 14, 4);
        if (ts.num_transitions() == 0) {
            continue;
        }
        ScriptedSpec spec;
        spec.initial_values.assign(ts.num_states(), Cost::zero());
        for (const auto& t : ts.transitions()) {
            if (rng() % 2 == 0) {
                spec.triggers[t].push_back({state_id(rng() % ts.num_states()), units(static_cast<std::int64_t>(rng() % 10))});
            }
        }
        const auto src = scripted_source(spec);
        Info info = src->initial();
        std::vector<bool> known(ts.num_states(), false);
        known[index(ts.init())] = true;
        for (int step = 0; step < 30; ++step) {
            const auto events = allowed_events(ts, known);
            const InfoEvent e = events[rng() % events.size()];
            const std::vector<Cost> before = info.get<StateValues>().values;
            if (const auto* t = std::get_if<Transition>(&e)) {
                info = src->update(info, *t);
                known[index(t->target)] = true;
            } else {
                info = src->refine(info, std::get<StateId>(e));
            }
            const auto& after = info.get<StateValues>().values;
            for (std::size_t i = 0; i < before.size(); ++i) {
                EXPECT_LE(before[i], after[i]);
            }
        }
    }
}

TEST(LabelLandmarks, RunningExample) {
    const TransitionSystem ts = running_example();
    EXPECT_EQ(compute_label_landmarks(ts, ts.state("A")), lm(ts, {"x", "y"}));
    EXPECT_EQ(compute_label_landmarks(ts, ts.state("B")), lm(ts, {"x", "y"}));
    EXPECT_EQ(compute_label_landmarks(ts, ts.state("C")), lm(ts, {"x"}));
    EXPECT_EQ(compute_label_landmarks(ts, ts.state("D")), lm(ts, {}));
}
