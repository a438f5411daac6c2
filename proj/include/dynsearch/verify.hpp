#ifndef DYNSEARCH_VERIFY_HPP
#define DYNSEARCH_VERIFY_HPP

#include "dynsearch/dynastar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dynsearch {

struct TheoremReport {
    std::string theorem;
    bool holds = true;
    /// Index into the trace of the first violating event, when applicable.
    std::optional<std::size_t> event_index;
    std::string expected;
    std::string actual;
    std::string context;

    nlohmann::json to_json() const;
};

/// Outcome and cost against the oracle: UNSOLVABLE iff h*(init) = INF,
/// otherwise exact cost equality. STEP_LIMIT never holds.
TheoremReport assert_optimal(const SearchResult& result, const TransitionSystem& ts);

/// Pop events in order; reports the first strict decrease of g + h.
TheoremReport popped_f_nondecreasing(const Trace& trace, const TransitionSystem& ts);

std::size_t reopen_count(const Trace& trace);

/// Holds iff the trace has no Reopen event.
TheoremReport no_reopening(const Trace& trace, const TransitionSystem& ts);

/// Every Expand(s, g, .) has g = g*(s).
TheoremReport optex(const Trace& trace, const TransitionSystem& ts);

/// Open list after the first `event_count` events, in pop order.
std::vector<OpenEntry> open_snapshot(const Trace& trace, std::size_t event_count);

/// Index one past the Expand event of the n-th expansion (0-based) of s and
/// the successor updates that followed it in the same iteration.
std::optional<std::size_t> end_of_expansion(const Trace& trace, StateId s, std::size_t n = 0);

/// States of Expand events in order.
std::vector<StateId> expansion_order(const Trace& trace);

/// f-values of Pop events in order.
std::vector<Cost> popped_f_values(const Trace& trace);

/// Outcome, cost and stats recovered from a trace (path left empty).
SearchResult result_from_trace(const Trace& trace);

/// Update and refine events of the run as an information event sequence.
std::vector<InfoEvent> information_events(const Trace& trace);

// ---------------------------------------------------------------------------
// Randomized battery

struct InstanceShape {
    std::size_t max_states = 12;
    std::size_t max_transitions = 30;
    std::int64_t max_cost = 9;
};

/// Random system for one seed: 2..max_states states, up to max_transitions
/// transitions, 1..2 goals, solvable or not.
TransitionSystem random_instance(std::uint64_t seed, const InstanceShape& shape = {});

struct BatteryConfig {
    std::size_t seeds = 100;
    std::uint64_t base_seed = 1;
    InstanceShape shape;
};

struct BatteryCheck {
    std::string name;
    std::size_t runs = 0;
    std::vector<std::string> failures;
};

struct BatteryReport {
    std::vector<BatteryCheck> checks;
    bool all_passed() const;
    nlohmann::json to_json() const;
};

/// Per instance:
///  - consistent-monotone oracle family, reeval on: no reopening, OPTEX,
///    popped f non-decreasing, optimal;
///  - admissible-only oracle family and hlm, both reeval settings: optimal;
///  - static h*: all four checks and identical traces for both reeval settings.
BatteryReport theorem_battery(const BatteryConfig& config);

}  // namespace dynsearch

#endif
