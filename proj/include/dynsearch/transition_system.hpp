#ifndef DYNSEARCH_TRANSITION_SYSTEM_HPP
#define DYNSEARCH_TRANSITION_SYSTEM_HPP

#include "dynsearch/cost.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dynsearch {

enum class StateId : std::uint32_t {};
enum class LabelId : std::uint32_t {};

constexpr std::size_t index(StateId s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index(LabelId l) { return static_cast<std::size_t>(l); }
constexpr StateId state_id(std::size_t i) { return static_cast<StateId>(i); }
constexpr LabelId label_id(std::size_t i) { return static_cast<LabelId>(i); }

struct Transition {
    StateId origin;
    LabelId label;
    StateId target;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

using Path = std::vector<Transition>;

/// Name-based, unvalidated form of a transition system. This is what the
/// parsers and the generator produce and what validate() inspects.
struct SystemDescription {
    std::int64_t cost_scale = 1;
    std::vector<std::pair<std::string, Cost>> labels;
    std::vector<std::string> states;
    std::string init;
    std::vector<std::string> goals;
    std::vector<std::array<std::string, 3>> transitions;
};

/// Lists every invariant violation; an empty result means the description
/// can be turned into a TransitionSystem.
std::vector<std::string> validate(const SystemDescription& description);

/// Immutable finite labeled transition system with dense ids assigned in
/// declaration order.
class TransitionSystem {
public:
    /// Throws InvalidSystem when validate() reports violations.
    static TransitionSystem from_description(const SystemDescription& description);

    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_labels() const { return label_names_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    std::int64_t cost_scale() const { return cost_scale_; }

    const std::string& state_name(StateId s) const;
    const std::string& label_name(LabelId l) const;
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LabelId> find_label(std::string_view name) const;
    /// Throws std::out_of_range("unknown state ...").
    StateId state(std::string_view name) const;
    LabelId label(std::string_view name) const;

    Cost label_cost(LabelId l) const;
    Cost cost(const Transition& t) const { return label_cost(t.label); }

    StateId init() const { return init_; }
    bool is_goal(StateId s) const;
    const std::vector<StateId>& goals() const { return goals_; }

    /// All transitions in declaration order.
    std::span<const Transition> transitions() const { return transitions_; }
    /// Outgoing transitions of `s` in declaration order. Throws on unknown state.
    std::span<const Transition> successors(StateId s) const;
    /// Incoming transitions of `s` in declaration order.
    std::span<const Transition> predecessors(StateId s) const;
    bool contains(const Transition& t) const;

    /// Convenience lookup by names; throws std::out_of_range on unknown names
    /// and std::invalid_argument if the triple is not a transition.
    Transition transition(std::string_view origin, std::string_view label, std::string_view target) const;

    std::string describe(const Transition& t) const;
    SystemDescription description() const;

private:
    TransitionSystem() = default;

    std::int64_t cost_scale_ = 1;
    std::vector<std::string> state_names_;
    std::vector<std::string> label_names_;
    std::vector<Cost> label_costs_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, LabelId> label_index_;
    StateId init_{};
    std::vector<StateId> goals_;
    std::vector<bool> goal_flags_;
    std::vector<Transition> transitions_;
    std::vector<Transition> sorted_transitions_;
    std::vector<std::vector<Transition>> outgoing_;
    std::vector<std::vector<Transition>> incoming_;
};

/// Sum of label costs. Throws std::invalid_argument if the path does not
/// chain or uses a transition outside the system.
Cost path_cost(const TransitionSystem& ts, std::span<const Transition> path);

/// Reads the line-oriented `ts-format 1` document or, when the first
/// non-blank character is `{`, the equivalent JSON object.
TransitionSystem parse(std::string_view text);
/// Throws IoError when the file cannot be read.
TransitionSystem parse_file(const std::string& path);
std::string read_text_file(const std::string& path);
SystemDescription parse_description(std::string_view text);

/// Canonical text form; parse(serialize(ts)) reproduces ts.
std::string serialize(const TransitionSystem& ts);

struct GeneratorParams {
    std::size_t n_states = 1;
    std::size_t n_transitions = 0;
    Cost max_cost = Cost::from_units(1);
    std::size_t n_goals = 1;
    bool solvable_only = false;
    std::uint64_t seed = 0;
    std::size_t max_retries = 1000;
};

/// Deterministic random system: states s0..s{n-1} with init s0, one label
/// per integer cost 0..max_cost. Throws std::invalid_argument for infeasible
/// parameters and LimitExceeded when no solvable sample was found.
TransitionSystem generate_random(const GeneratorParams& params);

}  // namespace dynsearch

template <>
struct std::hash<dynsearch::Transition> {
    std::size_t operator()(const dynsearch::Transition& t) const noexcept {
        std::size_t h = static_cast<std::size_t>(t.origin);
        h = h * 1000003u ^ static_cast<std::size_t>(t.label);
        h = h * 1000003u ^ static_cast<std::size_t>(t.target);
        return h;
    }
};

#endif
