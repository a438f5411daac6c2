#ifndef DYNSEARCH_SOURCES_HPP
#define DYNSEARCH_SOURCES_HPP

#include "dynsearch/info.hpp"

#include <map>
#include <variant>

namespace dynsearch {

// ---------------------------------------------------------------------------
// Parent source: g-values and parent pointers

struct ParentPayload {
    Cost g;
    std::optional<Transition> parent;  // nullopt only for the initial state info

    friend bool operator==(const ParentPayload&, const ParentPayload&) = default;
};

std::size_t info_hash(const ParentPayload& p);
nlohmann::json info_to_json(const ParentPayload& p, const TransitionSystem& ts);

class ParentProgression {
public:
    using Payload = ParentPayload;

    explicit ParentProgression(const TransitionSystem& ts);

    std::string name() const { return "parent"; }
    Payload initial_state_info() const { return {Cost::zero(), std::nullopt}; }
    Payload progress(const Payload& p, const Transition& t) const;
    /// Smaller g wins; on ties the first argument is kept.
    Payload merge(const Payload& a, const Payload& b) const;

private:
    std::vector<Cost> label_costs_;
};

using ParentSource = ProgressionBasedSource<ParentProgression>;
using ParentMap = PartialMap<ParentPayload>;

std::shared_ptr<const ParentSource> parent_source(const TransitionSystem& ts);

/// Follows parent pointers from `s` back to the initial state info.
/// Throws ContractViolation when ι(s) is undefined or the chain is cyclic or
/// dangling.
Path extract_path(const Info& parent_info, StateId s);

/// g stored for `s`, or nullopt when undefined.
std::optional<Cost> stored_g(const Info& parent_info, StateId s);

// ---------------------------------------------------------------------------
// Label landmarks

struct LandmarkSet {
    std::vector<bool> labels;  // indexed by label id

    bool contains(LabelId l) const { return labels.at(index(l)); }
    friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;
};

std::size_t info_hash(const LandmarkSet& set);
nlohmann::json info_to_json(const LandmarkSet& set, const TransitionSystem& ts);

LandmarkSet make_landmark_set(const TransitionSystem& ts, std::initializer_list<std::string_view> names);

class LandmarkProgression {
public:
    using Payload = LandmarkSet;

    explicit LandmarkProgression(LandmarkSet initial) : initial_(std::move(initial)) {}

    std::string name() const { return "landmarks"; }
    Payload initial_state_info() const { return initial_; }
    /// L \ {label}
    Payload progress(const Payload& set, const Transition& t) const;
    /// L1 ∪ L2
    Payload merge(const Payload& a, const Payload& b) const;

private:
    LandmarkSet initial_;
};

using LandmarkSource = ProgressionBasedSource<LandmarkProgression>;
using LandmarkMap = PartialMap<LandmarkSet>;

std::shared_ptr<const LandmarkSource> landmark_source(const TransitionSystem& ts, LandmarkSet initial_landmarks);

/// Labels occurring on every solution from `s`: a label is a landmark iff no
/// goal is reachable from `s` without it. Every label qualifies for dead ends.
LandmarkSet compute_label_landmarks(const TransitionSystem& ts, StateId s);

// ---------------------------------------------------------------------------
// Constant source (static heuristics)

struct NoInformation {
    friend bool operator==(const NoInformation&, const NoInformation&) = default;
};

inline std::size_t info_hash(const NoInformation&) { return 0; }
inline nlohmann::json info_to_json(const NoInformation&, const TransitionSystem&) { return nullptr; }

class ConstantSource final : public InformationSource {
public:
    std::string name() const override { return "constant"; }
    Info initial() const override { return Info::make(NoInformation{}); }
    Info update(Info info, const Transition&) const override { return info; }
    Info refine(Info info, StateId) const override { return info; }
};

// ---------------------------------------------------------------------------
// Lazy evaluation: which of two heuristics currently applies to each state

enum class Evaluator : std::uint8_t { Cheap, Accurate };

struct EvaluatorMap {
    std::vector<Evaluator> which;
    friend bool operator==(const EvaluatorMap&, const EvaluatorMap&) = default;
};

std::size_t info_hash(const EvaluatorMap& m);
nlohmann::json info_to_json(const EvaluatorMap& m, const TransitionSystem& ts);

/// Every state starts on the cheap evaluator; refine switches the refined
/// state to the accurate one; update is the identity.
class LazySource final : public InformationSource {
public:
    explicit LazySource(std::size_t num_states) : num_states_(num_states) {}

    std::string name() const override { return "lazy"; }
    Info initial() const override;
    Info update(Info info, const Transition&) const override { return info; }
    Info refine(Info info, StateId s) const override;

private:
    std::size_t num_states_;
};

std::shared_ptr<const LazySource> lazy_source(const TransitionSystem& ts);

// ---------------------------------------------------------------------------
// Per-state value tables (scripted heuristics, randomized families)

struct StateValues {
    std::vector<Cost> values;
    friend bool operator==(const StateValues&, const StateValues&) = default;
};

std::size_t info_hash(const StateValues& v);
nlohmann::json info_to_json(const StateValues& v, const TransitionSystem& ts);

struct Trigger {
    StateId state;
    Cost value;
};

/// Holds the current heuristic value of every state. Updating along a
/// trigger transition raises the bound state to the trigger value (max, so
/// values never decrease); refine is the identity.
class ScriptedSource final : public InformationSource {
public:
    ScriptedSource(std::vector<Cost> initial_values, std::map<Transition, std::vector<Trigger>> triggers);

    std::string name() const override { return "scripted"; }
    Info initial() const override { return Info::make(StateValues{initial_values_}); }
    Info update(Info info, const Transition& t) const override;
    Info refine(Info info, StateId) const override { return info; }

    const std::map<Transition, std::vector<Trigger>>& triggers() const { return triggers_; }

private:
    std::vector<Cost> initial_values_;
    std::map<Transition, std::vector<Trigger>> triggers_;
};

struct ScriptedSpec {
    std::vector<Cost> initial_values;
    std::map<Transition, std::vector<Trigger>> triggers;
};

std::shared_ptr<const ScriptedSource> scripted_source(ScriptedSpec spec);

/// Reads a trigger sidecar: either an array of {"on": [o,l,t], "state": s,
/// "h": v} or an object {"initial": {state: v}, "triggers": [...]}. States
/// absent from "initial" start at 0.
ScriptedSpec parse_triggers(const TransitionSystem& ts, std::string_view json_text);

// ---------------------------------------------------------------------------
// Reachable information

/// One event of the reachability discipline: refine on a state or update
/// along a transition.
using InfoEvent = std::variant<StateId, Transition>;

struct ReachableInfo {
    Info info;
    std::vector<InfoEvent> witness;
};

struct EnumerationOptions {
    std::size_t depth_bound = 0;
    std::size_t size_cap = 200000;
};

struct ReachableNode {
    std::size_t info_index;
    std::vector<bool> known;
    std::size_t depth;
    std::vector<InfoEvent> witness;
};

struct ReachableSet {
    /// Distinct objects in discovery order; each carries its shortest, then
    /// lexicographically smallest, witness (refines before updates, by id).
    std::vector<ReachableInfo> infos;
    /// Explored (object, known states) pairs; several may share an object.
    std::vector<ReachableNode> nodes;
    /// True when no new object appeared at the last level, i.e. the set is
    /// complete rather than cut off by the depth bound.
    bool exhausted = false;
    std::size_t depth_bound = 0;
};

/// Breadth-first closure of the event system from initial(). Refines apply
/// to known states; updates to transitions leaving known states; known
/// states grow with update targets. Throws LimitExceeded above size_cap.
ReachableSet enumerate_reachable_infos(const TransitionSystem& ts, const InformationSource& src,
                                       const EnumerationOptions& options);

/// Default depth bound |T| + |S|.
std::size_t default_depth_bound(const TransitionSystem& ts);

/// Whether the event sequence respects the discipline (every refined state
/// and update origin is init or an earlier update target).
bool is_disciplined(const TransitionSystem& ts, std::span<const InfoEvent> events);

/// Replays events from initial().
Info replay(const InformationSource& src, std::span<const InfoEvent> events);

/// Events allowed from a node with the given known states, in witness order.
std::vector<InfoEvent> allowed_events(const TransitionSystem& ts, const std::vector<bool>& known);

nlohmann::json event_to_json(const InfoEvent& e, const TransitionSystem& ts);

}  // namespace dynsearch

#endif
