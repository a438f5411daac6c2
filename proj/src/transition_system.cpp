#include "dynsearch/transition_system.hpp"

#include "dynsearch/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace dynsearch {

namespace {

bool valid_name(const std::string& name) {
    if (name.empty()) {
        return false;
    }
    return std::none_of(name.begin(), name.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#';
    });
}

bool power_of_ten(std::int64_t scale) {
    if (scale < 1) {
        return false;
    }
    while (scale % 10 == 0) {
        scale /= 10;
    }
    return scale == 1;
}

}  // namespace

std::vector<std::string> validate(const SystemDescription& d) {
    std::vector<std::string> out;
    if (!power_of_ten(d.cost_scale)) {
        out.push_back("cost scale " + std::to_string(d.cost_scale) + " is not a power of ten");
    }

    std::unordered_set<std::string> labels;
    for (const auto& [name, cost] : d.labels) {
        if (!valid_name(name)) {
            out.push_back("invalid label name '" + name + "'");
        }
        if (!labels.insert(name).second) {
            out.push_back("duplicate label '" + name + "'");
        }
        if (cost.is_infinite()) {
            out.push_back("label '" + name + "' has infinite cost");
        }
    }

    std::unordered_set<std::string> states;
    for (const auto& name : d.states) {
        if (!valid_name(name)) {
            out.push_back("invalid state name '" + name + "'");
        }
        if (!states.insert(name).second) {
            out.push_back("duplicate state '" + name + "'");
        }
    }

    if (d.init.empty()) {
        out.push_back("missing initial state");
    } else if (!states.contains(d.init)) {
        out.push_back("unknown state '" + d.init + "' as initial state");
    }

    std::unordered_set<std::string> goals;
    for (const auto& g : d.goals) {
        if (!states.contains(g)) {
            out.push_back("unknown state '" + g + "' in goals");
        } else if (!goals.insert(g).second) {
            out.push_back("duplicate goal '" + g + "'");
        }
    }

    std::set<std::array<std::string, 3>> seen;
    for (const auto& t : d.transitions) {
        const std::string triple = "<" + t[0] + "," + t[1] + "," + t[2] + ">";
        if (!states.contains(t[0])) {
            out.push_back("unknown state '" + t[0] + "' in transition " + triple);
        }
        if (!labels.contains(t[1])) {
            out.push_back("unknown label '" + t[1] + "' in transition " + triple);
        }
        if (!states.contains(t[2])) {
            out.push_back("unknown state '" + t[2] + "' in transition " + triple);
        }
        if (!seen.insert(t).second) {
            out.push_back("duplicate transition " + triple);
        }
    }
    return out;
}

TransitionSystem TransitionSystem::from_description(const SystemDescription& d) {
    if (auto violations = validate(d); !violations.empty()) {
        throw InvalidSystem(std::move(violations));
    }
    TransitionSystem ts;
    ts.cost_scale_ = d.cost_scale;
    for (const auto& [name, cost] : d.labels) {
        ts.label_index_.emplace(name, label_id(ts.label_names_.size()));
        ts.label_names_.push_back(name);
        ts.label_costs_.push_back(cost);
    }
    for (const auto& name : d.states) {
        ts.state_index_.emplace(name, state_id(ts.state_names_.size()));
        ts.state_names_.push_back(name);
    }
    ts.init_ = ts.state_index_.at(d.init);
    ts.goal_flags_.assign(ts.num_states(), false);
    for (const auto& g : d.goals) {
        StateId s = ts.state_index_.at(g);
        ts.goals_.push_back(s);
        ts.goal_flags_[index(s)] = true;
    }
    ts.outgoing_.resize(ts.num_states());
    ts.incoming_.resize(ts.num_states());
    for (const auto& [o, l, t] : d.transitions) {
        Transition tr{ts.state_index_.at(o), ts.label_index_.at(l), ts.state_index_.at(t)};
        ts.transitions_.push_back(tr);
        ts.outgoing_[index(tr.origin)].push_back(tr);
        ts.incoming_[index(tr.target)].push_back(tr);
    }
    ts.sorted_transitions_ = ts.transitions_;
    std::sort(ts.sorted_transitions_.begin(), ts.sorted_transitions_.end());
    return ts;
}

const std::string& TransitionSystem::state_name(StateId s) const {
    if (index(s) >= num_states()) {
        throw std::out_of_range("unknown state id " + std::to_string(index(s)));
    }
    return state_names_[index(s)];
}

const std::string& TransitionSystem::label_name(LabelId l) const {
    if (index(l) >= num_labels()) {
        throw std::out_of_range("unknown label id " + std::to_string(index(l)));
    }
    return label_names_[index(l)];
}

std::optional<StateId> TransitionSystem::find_state(std::string_view name) const {
    if (auto it = state_index_.find(std::string(name)); it != state_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<LabelId> TransitionSystem::find_label(std::string_view name) const {
    if (auto it = label_index_.find(std::string(name)); it != label_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

StateId TransitionSystem::state(std::string_view name) const {
    if (auto s = find_state(name)) {
        return *s;
    }
    throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

LabelId TransitionSystem::label(std::string_view name) const {
    if (auto l = find_label(name)) {
        return *l;
    }
    throw std::out_of_range("unknown label '" + std::string(name) + "'");
}

Cost TransitionSystem::label_cost(LabelId l) const {
    if (index(l) >= num_labels()) {
        throw std::out_of_range("unknown label id " + std::to_string(index(l)));
    }
    return label_costs_[index(l)];
}

bool TransitionSystem::is_goal(StateId s) const {
    return index(s) < num_states() && goal_flags_[index(s)];
}

std::span<const Transition> TransitionSystem::successors(StateId s) const {
    if (index(s) >= num_states()) {
        throw std::out_of_range("unknown state id " + std::to_string(index(s)));
    }
    return outgoing_[index(s)];
}

std::span<const Transition> TransitionSystem::predecessors(StateId s) const {
    if (index(s) >= num_states()) {
        throw std::out_of_range("unknown state id " + std::to_string(index(s)));
    }
    return incoming_[index(s)];
}

bool TransitionSystem::contains(const Transition& t) const {
    return std::binary_search(sorted_transitions_.begin(), sorted_transitions_.end(), t);
}

Transition TransitionSystem::transition(std::string_view origin, std::string_view label_name,
                                        std::string_view target) const {
    Transition t{state(origin), label(label_name), state(target)};
    if (!contains(t)) {
        throw std::invalid_argument("no transition " + describe(t));
    }
    return t;
}

std::string TransitionSystem::describe(const Transition& t) const {
    return "<" + state_name(t.origin) + "," + label_name(t.label) + "," + state_name(t.target) + ">";
}

SystemDescription TransitionSystem::description() const {
    SystemDescription d;
    d.cost_scale = cost_scale_;
    for (std::size_t i = 0; i < num_labels(); ++i) {
        d.labels.emplace_back(label_names_[i], label_costs_[i]);
    }
    d.states = state_names_;
    d.init = state_names_[index(init_)];
    for (StateId g : goals_) {
        d.goals.push_back(state_names_[index(g)]);
    }
    for (const Transition& t : transitions_) {
        d.transitions.push_back({state_names_[index(t.origin)], label_names_[index(t.label)],
                                 state_names_[index(t.target)]});
    }
    return d;
}

Cost path_cost(const TransitionSystem& ts, std::span<const Transition> path) {
    Cost total;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!ts.contains(path[i])) {
            throw std::invalid_argument("path step " + std::to_string(i) + " is not a transition of the system");
        }
        if (i > 0 && path[i - 1].target != path[i].origin) {
            throw std::invalid_argument("path does not chain at step " + std::to_string(i));
        }
        total += ts.cost(path[i]);
    }
    return total;
}

}  // namespace dynsearch
