#include "dynsearch/oracle.hpp"

#include <functional>
#include <queue>
#include <span>
#include <utility>

namespace dynsearch {

namespace {

// Lazy-deletion Dijkstra. Ties pop in state index order, which keeps the
// relaxation sequence reproducible.
CostTable dijkstra(const TransitionSystem& ts, std::span<const StateId> sources, bool backward) {
    CostTable dist{std::vector<Cost>(ts.num_states(), kInfinity)};
    using Item = std::pair<Cost, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (StateId s : sources) {
        dist.values[index(s)] = Cost::zero();
        queue.emplace(Cost::zero(), index(s));
    }
    std::vector<bool> done(ts.num_states(), false);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) {
            continue;
        }
        done[u] = true;
        auto edges = backward ? ts.predecessors(state_id(u)) : ts.successors(state_id(u));
        for (const Transition& t : edges) {
            const std::size_t v = backward ? index(t.origin) : index(t.target);
            Cost candidate = d + ts.cost(t);
            if (candidate < dist.values[v]) {
                dist.values[v] = candidate;
                queue.emplace(candidate, v);
            }
        }
    }
    return dist;
}

}  // namespace

CostTable gstar_all(const TransitionSystem& ts) {
    return distances_from(ts, ts.init());
}

CostTable hstar_all(const TransitionSystem& ts) {
    return dijkstra(ts, ts.goals(), true);
}

Cost optimal_solution_cost(const TransitionSystem& ts) {
    return hstar_all(ts)[ts.init()];
}

CostTable distances_from(const TransitionSystem& ts, StateId source) {
    StateId sources[] = {source};
    return dijkstra(ts, sources, false);
}

std::vector<CostTable> all_pairs_costs(const TransitionSystem& ts) {
    std::vector<CostTable> rows;
    rows.reserve(ts.num_states());
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        rows.push_back(distances_from(ts, state_id(s)));
    }
    return rows;
}

}  // namespace dynsearch
