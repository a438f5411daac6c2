#ifndef DYNSEARCH_PROPERTIES_HPP
#define DYNSEARCH_PROPERTIES_HPP

#include "dynsearch/heuristics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dynsearch {

enum class Property { DynSafe, DynAdmissible, DynConsistent, PartialDynConsistent, DynGoalAware, DynMonotone };

std::string to_string(Property p);
/// Accepts the names produced by to_string ("dyn-safe", ...).
Property parse_property(std::string_view name);
const std::vector<Property>& all_properties();

/// Yes is only produced by exact checks of static tables; enumeration-based
/// checks report BoundedYes when no violation was found.
enum class Holds { Yes, No, BoundedYes };

std::string to_string(Holds h);

struct Violation {
    /// Event sequence producing the information object the inequality fails at.
    std::vector<InfoEvent> witness;
    StateId state{};
    /// Second state for consistency-type checks.
    std::optional<StateId> other_state;
    std::optional<Transition> transition;
    /// For dyn-monotone: the event after which the value dropped.
    std::optional<InfoEvent> event;
    Cost lhs;
    /// Transition or path cost for consistency-type checks.
    std::optional<Cost> edge;
    Cost rhs;
    /// Human-readable failing inequality, e.g. "3 > 2 + 0".
    std::string inequality;

    nlohmann::json to_json(const TransitionSystem& ts) const;
};

struct PropertyVerdict {
    Property property{};
    Holds holds = Holds::BoundedYes;
    /// First violation in witness order (shortest event sequence first).
    std::optional<Violation> witness;
    /// Every violation found at the witness' information object.
    std::vector<Violation> violations_at_witness;
    std::size_t depth_bound = 0;
    std::size_t infos_checked = 0;
    /// The enumeration reached a fixpoint before the depth bound.
    bool exhausted = false;
    std::string note;

    nlohmann::json to_json(const TransitionSystem& ts) const;
};

/// Tests the property over every information object reachable within the
/// bound. A depth bound of 0 in options means default_depth_bound(ts).
/// Throws LimitExceeded when the enumeration exceeds options.size_cap.
PropertyVerdict check_property(const TransitionSystem& ts, const DynamicHeuristic& h, Property property,
                               EnumerationOptions options = {});

/// Same check over an already enumerated set.
PropertyVerdict check_property(const TransitionSystem& ts, const DynamicHeuristic& h, Property property,
                               const ReachableSet& reachable);

/// Exact check of a static table. DynMonotone always holds; partial
/// dyn-consistency coincides with path consistency.
Holds check_static_property(const TransitionSystem& ts, const CostTable& table, Property property);

}  // namespace dynsearch

#endif
