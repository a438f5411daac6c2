#include "dynsearch/error.hpp"
#include "dynsearch/transition_system.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace dynsearch {

namespace {

bool goal_reachable(const TransitionSystem& ts) {
    std::vector<bool> seen(ts.num_states(), false);
    std::vector<StateId> stack{ts.init()};
    seen[index(ts.init())] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        if (ts.is_goal(s)) {
            return true;
        }
        for (const Transition& t : ts.successors(s)) {
            if (!seen[index(t.target)]) {
                seen[index(t.target)] = true;
                stack.push_back(t.target);
            }
        }
    }
    return false;
}

SystemDescription sample(const GeneratorParams& p, std::mt19937_64& rng) {
    SystemDescription d;
    const auto n_labels = static_cast<std::size_t>(p.max_cost.units()) + 1;
    for (std::size_t c = 0; c < n_labels; ++c) {
        d.labels.emplace_back("c" + std::to_string(c), Cost::from_units(static_cast<Cost::Rep>(c)));
    }
    for (std::size_t i = 0; i < p.n_states; ++i) {
        d.states.push_back("s" + std::to_string(i));
    }
    d.init = d.states.front();

    std::vector<std::size_t> order(p.n_states);
    for (std::size_t i = 0; i < p.n_states; ++i) {
        order[i] = i;
    }
    // Partial Fisher-Yates picks distinct goals.
    for (std::size_t i = 0; i < p.n_goals; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, p.n_states - 1);
        std::swap(order[i], order[pick(rng)]);
        d.goals.push_back(d.states[order[i]]);
    }

    std::uniform_int_distribution<std::size_t> state_dist(0, p.n_states - 1);
    std::uniform_int_distribution<std::size_t> label_dist(0, n_labels - 1);
    std::set<std::array<std::size_t, 3>> used;
    while (used.size() < p.n_transitions) {
        std::array<std::size_t, 3> t{state_dist(rng), label_dist(rng), state_dist(rng)};
        if (used.insert(t).second) {
            d.transitions.push_back({d.states[t[0]], d.labels[t[1]].first, d.states[t[2]]});
        }
    }
    return d;
}

}  // namespace

TransitionSystem generate_random(const GeneratorParams& p) {
    if (p.n_states < 1) {
        throw std::invalid_argument("generator needs at least one state");
    }
    if (p.max_cost.is_infinite() || p.max_cost.units() < 1) {
        throw std::invalid_argument("max_cost must be a finite cost >= 1");
    }
    if (p.max_cost.units() > 1000) {
        throw std::invalid_argument("max_cost above 1000 is not supported (one label per cost value)");
    }
    if (p.n_goals > p.n_states) {
        throw std::invalid_argument("more goals than states");
    }
    if (p.solvable_only && p.n_goals == 0) {
        throw std::invalid_argument("solvable_only requires at least one goal");
    }
    const auto n_labels = static_cast<std::size_t>(p.max_cost.units()) + 1;
    const std::size_t capacity = p.n_states * p.n_states * n_labels;
    if (p.n_transitions > capacity) {
        throw std::invalid_argument("n_transitions exceeds |S|^2 * |L| = " + std::to_string(capacity));
    }

    std::mt19937_64 rng(p.seed);
    for (std::size_t attempt = 0; attempt <= p.max_retries; ++attempt) {
        TransitionSystem ts = TransitionSystem::from_description(sample(p, rng));
        if (!p.solvable_only || goal_reachable(ts)) {
            return ts;
        }
    }
    throw LimitExceeded("no solvable system found within " + std::to_string(p.max_retries) + " retries");
}

}  // namespace dynsearch
