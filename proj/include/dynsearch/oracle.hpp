#ifndef DYNSEARCH_ORACLE_HPP
#define DYNSEARCH_ORACLE_HPP

#include "dynsearch/transition_system.hpp"

#include <vector>

namespace dynsearch {

/// Per-state cost table; INF marks unreachable states (g*) or dead ends (h*).
struct CostTable {
    std::vector<Cost> values;

    Cost operator[](StateId s) const { return values.at(index(s)); }
    std::size_t size() const { return values.size(); }
    friend bool operator==(const CostTable&, const CostTable&) = default;
};

/// g*: forward Dijkstra from the initial state.
CostTable gstar_all(const TransitionSystem& ts);

/// h*: backward Dijkstra from all goal states over reversed transitions.
CostTable hstar_all(const TransitionSystem& ts);

/// h*(init); INF iff the system is unsolvable.
Cost optimal_solution_cost(const TransitionSystem& ts);

/// Cheapest path cost from `source` to every state.
CostTable distances_from(const TransitionSystem& ts, StateId source);

/// Row s holds distances_from(ts, s).
std::vector<CostTable> all_pairs_costs(const TransitionSystem& ts);

}  // namespace dynsearch

#endif
