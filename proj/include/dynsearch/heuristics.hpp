#ifndef DYNSEARCH_HEURISTICS_HPP
#define DYNSEARCH_HEURISTICS_HPP

#include "dynsearch/oracle.hpp"
#include "dynsearch/sources.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace dynsearch {

/// Evaluates a state under an information object of its source. eval must
/// be pure.
class DynamicHeuristic {
public:
    virtual ~DynamicHeuristic() = default;

    virtual std::string name() const = 0;
    virtual Cost eval(StateId s, const Info& info) const = 0;

    const SourcePtr& source() const { return source_; }

protected:
    explicit DynamicHeuristic(SourcePtr source) : source_(std::move(source)) {}

private:
    SourcePtr source_;
};

using HeuristicPtr = std::shared_ptr<const DynamicHeuristic>;

/// Sum of the costs of the landmarks stored for a state, 0 where undefined.
/// The one-argument form seeds the initial state with its label landmarks.
HeuristicPtr hlm(const TransitionSystem& ts);
HeuristicPtr hlm(const TransitionSystem& ts, LandmarkSet initial_landmarks);

/// Cheap table until a state is refined, accurate table afterwards.
HeuristicPtr lazy_heuristic(CostTable cheap, CostTable accurate, const TransitionSystem& ts);

/// Static table over the constant source.
HeuristicPtr static_adapter(CostTable table, std::string name = "static");

/// Reads the current value from a scripted source.
HeuristicPtr scripted_heuristic(ScriptedSpec spec);

enum class OracleFlavor { AdmissibleOnly, ConsistentMonotone };

/// Randomized test families derived from h*.
///
/// AdmissibleOnly: each state starts at a random value in [0, h*(s)] and a
/// refine on s raises it to a seed-determined value no larger than h*(s).
/// Dead ends start at INF or an arbitrary finite value. dyn-admissible and
/// dyn-monotonic by construction, usually not dyn-consistent.
///
/// ConsistentMonotone: max(0, h*(s) - slack) with one global slack that
/// shrinks on refine events. dyn-admissible, dyn-consistent and
/// dyn-monotonic.
HeuristicPtr oracle_family(const TransitionSystem& ts, OracleFlavor flavor, std::uint64_t seed);

/// ConsistentMonotone family with an explicit initial slack.
HeuristicPtr consistent_monotone(const TransitionSystem& ts, Cost initial_slack, std::uint64_t seed);

/// Wraps h so that every state's value is the running maximum of all values
/// observed for it, which makes the result dyn-monotonic.
HeuristicPtr monotonic_wrap(const TransitionSystem& ts, HeuristicPtr inner);

/// 0 on goals, the minimum label cost elsewhere (INF when no label exists).
CostTable blind_goal_table(const TransitionSystem& ts);

/// h*(s) / 2 rounded down in cost units.
CostTable halved_table(const CostTable& table);

/// Reads a total table: JSON object {state: cost} or lines "<state> <cost>".
CostTable parse_heuristic_table(const TransitionSystem& ts, std::string_view text);

/// Builds a heuristic from a textual spec:
///   zero | blind | hstar | half-hstar | hlm
///   static:<table file> | scripted:<trigger file> | lazy:<cheap file>,<accurate file>
///   lazy-half            cheap floor(h*/2), accurate h*
///   oracle-admissible | oracle-consistent   (randomized by seed)
///   max:<spec>           running-maximum wrapper
/// Throws std::invalid_argument for unknown specs and IoError for unreadable files.
HeuristicPtr heuristic_from_spec(std::string_view spec, const TransitionSystem& ts, std::uint64_t seed = 0);

/// Statically checks a table (constant source) for the classic properties.
bool table_admissible(const TransitionSystem& ts, const CostTable& table);
bool table_consistent(const TransitionSystem& ts, const CostTable& table);

}  // namespace dynsearch

#endif
