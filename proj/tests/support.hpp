#ifndef DYNSEARCH_TESTS_SUPPORT_HPP
#define DYNSEARCH_TESTS_SUPPORT_HPP

#include "dynsearch/transition_system.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using dynsearch::Cost;
using dynsearch::StateId;
using dynsearch::TransitionSystem;

/// Small random systems built directly from a description, independently of
/// generate_random. Labels are l0..l{max_cost} with cost equal to the index.
inline TransitionSystem small_instance(std::uint64_t seed, std::size_t max_states = 8,
                                       std::size_t max_transitions = 20, int max_cost = 6) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    dynsearch::SystemDescription d;
    const std::size_t n = pick(1, max_states);
    for (std::size_t i = 0; i < n; ++i) {
        d.states.push_back("q" + std::to_string(i));
    }
    for (int c = 0; c <= max_cost; ++c) {
        d.labels.emplace_back("l" + std::to_string(c), Cost::from_units(c));
    }
    d.init = d.states[pick(0, n - 1)];
    const std::size_t goals = pick(0, std::min<std::size_t>(2, n));
    std::set<std::size_t> goal_ids;
    while (goal_ids.size() < goals) {
        goal_ids.insert(pick(0, n - 1));
    }
    for (std::size_t g : goal_ids) {
        d.goals.push_back(d.states[g]);
    }
    std::set<std::array<std::string, 3>> seen;
    const std::size_t m = pick(0, max_transitions);
    for (std::size_t k = 0; k < m; ++k) {
        std::array<std::string, 3> t{d.states[pick(0, n - 1)], d.labels[pick(0, d.labels.size() - 1)].first,
                                     d.states[pick(0, n - 1)]};
        if (seen.insert(t).second) {
            d.transitions.push_back(t);
        }
    }
    return TransitionSystem::from_description(d);
}

/// Cheapest cost over all simple paths from `from` to any state in `targets`,
/// by exhaustive depth-first enumeration. Exponential; meant for tiny systems.
inline Cost brute_force_cost(const TransitionSystem& ts, StateId from, const std::vector<bool>& targets) {
    Cost best = dynsearch::kInfinity;
    std::vector<bool> on_path(ts.num_states(), false);
    auto dfs = [&](auto&& self, StateId s, Cost so_far) -> void {
        if (targets[dynsearch::index(s)] && so_far < best) {
            best = so_far;
        }
        on_path[dynsearch::index(s)] = true;
        for (const auto& t : ts.successors(s)) {
            if (!on_path[dynsearch::index(t.target)]) {
                self(self, t.target, so_far + ts.cost(t));
            }
        }
        on_path[dynsearch::index(s)] = false;
    };
    dfs(dfs, from, Cost::zero());
    return best;
}

inline Cost brute_force_hstar(const TransitionSystem& ts, StateId s) {
    std::vector<bool> goals(ts.num_states(), false);
    for (StateId g : ts.goals()) {
        goals[dynsearch::index(g)] = true;
    }
    return brute_force_cost(ts, s, goals);
}

inline Cost brute_force_gstar(const TransitionSystem& ts, StateId s) {
    std::vector<bool> target(ts.num_states(), false);
    target[dynsearch::index(s)] = true;
    return brute_force_cost(ts, ts.init(), target);
}

inline Cost units(std::int64_t u) {
    return Cost::from_units(u);
}

}  // namespace testing_support

#endif
