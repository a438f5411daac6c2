#include "dynsearch/sources.hpp"

#include "dynsearch/json_io.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace dynsearch {

namespace {

std::size_t cost_hash(Cost c) {
    return c.is_infinite() ? ~std::size_t{0} : static_cast<std::size_t>(c.units());
}

}  // namespace

// ---------------------------------------------------------------------------
// Parent source

std::size_t info_hash(const ParentPayload& p) {
    std::size_t h = cost_hash(p.g);
    if (p.parent) {
        h = hash_combine(h, std::hash<Transition>{}(*p.parent));
    }
    return h;
}

nlohmann::json info_to_json(const ParentPayload& p, const TransitionSystem& ts) {
    return {{"g", cost_to_json(p.g, ts)}, {"parent", p.parent ? transition_to_json(*p.parent, ts) : nlohmann::json()}};
}

ParentProgression::ParentProgression(const TransitionSystem& ts) {
    for (std::size_t i = 0; i < ts.num_labels(); ++i) {
        label_costs_.push_back(ts.label_cost(label_id(i)));
    }
}

ParentPayload ParentProgression::progress(const Payload& p, const Transition& t) const {
    return {p.g + label_costs_.at(index(t.label)), t};
}

ParentPayload ParentProgression::merge(const Payload& a, const Payload& b) const {
    return a.g <= b.g ? a : b;
}

std::shared_ptr<const ParentSource> parent_source(const TransitionSystem& ts) {
    return progression_to_information(ParentProgression(ts), ts);
}

std::optional<Cost> stored_g(const Info& parent_info, StateId s) {
    const auto& entry = parent_info.get<ParentMap>().at(s);
    if (!entry) {
        return std::nullopt;
    }
    return entry->g;
}

Path extract_path(const Info& parent_info, StateId s) {
    const auto& map = parent_info.get<ParentMap>();
    Path reversed;
    StateId current = s;
    for (;;) {
        const auto& entry = map.entries.at(index(current));
        if (!entry) {
            throw ContractViolation("parent chain reaches a state without information (state id " +
                                    std::to_string(index(current)) + ")");
        }
        if (!entry->parent) {
            break;
        }
        if (entry->parent->target != current) {
            throw ContractViolation("parent pointer does not end in its state");
        }
        reversed.push_back(*entry->parent);
        if (reversed.size() > map.entries.size()) {
            throw ContractViolation("cyclic parent chain");
        }
        current = entry->parent->origin;
    }
    return {reversed.rbegin(), reversed.rend()};
}

// ---------------------------------------------------------------------------
// Landmarks

std::size_t info_hash(const LandmarkSet& set) {
    return std::hash<std::vector<bool>>{}(set.labels);
}

nlohmann::json info_to_json(const LandmarkSet& set, const TransitionSystem& ts) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        if (set.labels[i]) {
            out.push_back(ts.label_name(label_id(i)));
        }
    }
    return out;
}

LandmarkSet make_landmark_set(const TransitionSystem& ts, std::initializer_list<std::string_view> names) {
    LandmarkSet set{std::vector<bool>(ts.num_labels(), false)};
    for (auto name : names) {
        set.labels[index(ts.label(name))] = true;
    }
    return set;
}

LandmarkSet LandmarkProgression::progress(const Payload& set, const Transition& t) const {
    LandmarkSet out = set;
    out.labels.at(index(t.label)) = false;
    return out;
}

LandmarkSet LandmarkProgression::merge(const Payload& a, const Payload& b) const {
    LandmarkSet out = a;
    for (std::size_t i = 0; i < out.labels.size(); ++i) {
        out.labels[i] = out.labels[i] || b.labels.at(i);
    }
    return out;
}

std::shared_ptr<const LandmarkSource> landmark_source(const TransitionSystem& ts, LandmarkSet initial_landmarks) {
    if (initial_landmarks.labels.size() != ts.num_labels()) {
        throw std::invalid_argument("landmark set size does not match the label count");
    }
    return progression_to_information(LandmarkProgression(std::move(initial_landmarks)), ts);
}

LandmarkSet compute_label_landmarks(const TransitionSystem& ts, StateId s) {
    auto goal_reachable_without = [&](std::optional<LabelId> banned) {
        std::vector<bool> seen(ts.num_states(), false);
        std::vector<StateId> stack{s};
        seen[index(s)] = true;
        while (!stack.empty()) {
            StateId u = stack.back();
            stack.pop_back();
            if (ts.is_goal(u)) {
                return true;
            }
            for (const Transition& t : ts.successors(u)) {
                if (t.label != banned && !seen[index(t.target)]) {
                    seen[index(t.target)] = true;
                    stack.push_back(t.target);
                }
            }
        }
        return false;
    };
    LandmarkSet set{std::vector<bool>(ts.num_labels(), false)};
    for (std::size_t l = 0; l < ts.num_labels(); ++l) {
        set.labels[l] = !goal_reachable_without(label_id(l));
    }
    return set;
}

// ---------------------------------------------------------------------------
// Lazy evaluation

std::size_t info_hash(const EvaluatorMap& m) {
    std::size_t h = m.which.size();
    for (std::size_t i = 0; i < m.which.size(); ++i) {
        if (m.which[i] == Evaluator::Accurate) {
            h = hash_combine(h, i);
        }
    }
    return h;
}

nlohmann::json info_to_json(const EvaluatorMap& m, const TransitionSystem& ts) {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t i = 0; i < m.which.size(); ++i) {
        out[ts.state_name(state_id(i))] = m.which[i] == Evaluator::Cheap ? "C" : "A";
    }
    return out;
}

Info LazySource::initial() const {
    return Info::make(EvaluatorMap{std::vector<Evaluator>(num_states_, Evaluator::Cheap)});
}

Info LazySource::refine(Info info, StateId s) const {
    if (info.get<EvaluatorMap>().which.at(index(s)) != Evaluator::Accurate) {
        info.mutate<EvaluatorMap>().which[index(s)] = Evaluator::Accurate;
    }
    return info;
}

std::shared_ptr<const LazySource> lazy_source(const TransitionSystem& ts) {
    return std::make_shared<const LazySource>(ts.num_states());
}

// ---------------------------------------------------------------------------
// Scripted values

std::size_t info_hash(const StateValues& v) {
    std::size_t h = v.values.size();
    for (Cost c : v.values) {
        h = hash_combine(h, cost_hash(c));
    }
    return h;
}

nlohmann::json info_to_json(const StateValues& v, const TransitionSystem& ts) {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        out[ts.state_name(state_id(i))] = cost_to_json(v.values[i], ts);
    }
    return out;
}

ScriptedSource::ScriptedSource(std::vector<Cost> initial_values, std::map<Transition, std::vector<Trigger>> triggers)
    : initial_values_(std::move(initial_values)), triggers_(std::move(triggers)) {
    for (const auto& [t, list] : triggers_) {
        for (const Trigger& trig : list) {
            if (index(trig.state) >= initial_values_.size()) {
                throw std::invalid_argument("trigger refers to an unknown state");
            }
        }
    }
}

Info ScriptedSource::update(Info info, const Transition& t) const {
    auto it = triggers_.find(t);
    if (it == triggers_.end()) {
        return info;
    }
    for (const Trigger& trig : it->second) {
        if (info.get<StateValues>().values[index(trig.state)] < trig.value) {
            info.mutate<StateValues>().values[index(trig.state)] = trig.value;
        }
    }
    return info;
}

std::shared_ptr<const ScriptedSource> scripted_source(ScriptedSpec spec) {
    return std::make_shared<const ScriptedSource>(std::move(spec.initial_values), std::move(spec.triggers));
}

ScriptedSpec parse_triggers(const TransitionSystem& ts, std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("trigger file: ") + e.what(), 0, 0);
    }
    ScriptedSpec spec;
    spec.initial_values.assign(ts.num_states(), Cost::zero());
    const nlohmann::json* list = &doc;
    try {
        if (doc.is_object()) {
            if (doc.contains("initial")) {
                for (const auto& [name, value] : doc["initial"].items()) {
                    spec.initial_values[index(ts.state(name))] = cost_from_json(value, ts);
                }
            }
            list = &doc.at("triggers");
        }
        if (!list->is_array()) {
            throw ParseError("trigger file must hold an array of triggers", 0, 0);
        }
        for (const auto& entry : *list) {
            Transition t = transition_from_json(entry.at("on"), ts);
            spec.triggers[t].push_back({state_from_json(entry.at("state"), ts), cost_from_json(entry.at("h"), ts)});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("trigger file: ") + e.what(), 0, 0);
    } catch (const std::out_of_range& e) {
        throw ParseError(std::string("trigger file: ") + e.what(), 0, 0);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("trigger file: ") + e.what(), 0, 0);
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Reachable information

std::size_t default_depth_bound(const TransitionSystem& ts) {
    return ts.num_transitions() + ts.num_states();
}

std::vector<InfoEvent> allowed_events(const TransitionSystem& ts, const std::vector<bool>& known) {
    std::vector<InfoEvent> events;
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        if (known[s]) {
            events.emplace_back(state_id(s));
        }
    }
    for (const Transition& t : ts.transitions()) {
        if (known[index(t.origin)]) {
            events.emplace_back(t);
        }
    }
    return events;
}

namespace {

Info apply_event(const InformationSource& src, Info info, const InfoEvent& e) {
    if (const auto* s = std::get_if<StateId>(&e)) {
        return src.refine(std::move(info), *s);
    }
    return src.update(std::move(info), std::get<Transition>(e));
}

struct NodeKey {
    std::size_t info_index;
    std::vector<bool> known;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
        return hash_combine(k.info_index, std::hash<std::vector<bool>>{}(k.known));
    }
};

}  // namespace

ReachableSet enumerate_reachable_infos(const TransitionSystem& ts, const InformationSource& src,
                                       const EnumerationOptions& options) {
    ReachableSet result;
    result.depth_bound = options.depth_bound;

    std::unordered_map<Info, std::size_t, InfoHash> info_ids;
    std::unordered_map<NodeKey, std::size_t, NodeKeyHash> node_ids;

    auto intern = [&](Info info, const std::vector<InfoEvent>& witness) {
        auto [it, inserted] = info_ids.emplace(info, result.infos.size());
        if (inserted) {
            result.infos.push_back({std::move(info), witness});
        }
        return it->second;
    };

    // Discovery order along BFS levels yields the lexicographically smallest
    // shortest witness for every node and object.
    auto add_node = [&](Info info, std::vector<bool> known, std::size_t depth, std::vector<InfoEvent> witness) {
        std::size_t info_index = intern(std::move(info), witness);
        NodeKey key{info_index, known};
        if (node_ids.contains(key)) {
            return false;
        }
        if (result.nodes.size() >= options.size_cap) {
            throw LimitExceeded("reachable information enumeration exceeded " + std::to_string(options.size_cap) +
                                " nodes");
        }
        node_ids.emplace(std::move(key), result.nodes.size());
        result.nodes.push_back({info_index, std::move(known), depth, std::move(witness)});
        return true;
    };

    std::vector<bool> initial_known(ts.num_states(), false);
    initial_known[index(ts.init())] = true;
    add_node(src.initial(), initial_known, 0, {});

    std::size_t level_begin = 0;
    for (std::size_t depth = 0; depth < options.depth_bound; ++depth) {
        const std::size_t level_end = result.nodes.size();
        if (level_begin == level_end) {
            break;
        }
        for (std::size_t n = level_begin; n < level_end; ++n) {
            // Copies: add_node may reallocate the node vectors.
            const std::vector<bool> known = result.nodes[n].known;
            const Info info = result.infos[result.nodes[n].info_index].info;
            for (const InfoEvent& e : allowed_events(ts, known)) {
                std::vector<bool> next_known = known;
                if (const auto* t = std::get_if<Transition>(&e)) {
                    next_known[index(t->target)] = true;
                }
                std::vector<InfoEvent> witness = result.nodes[n].witness;
                witness.push_back(e);
                add_node(apply_event(src, info, e), std::move(next_known), depth + 1, std::move(witness));
            }
        }
        level_begin = level_end;
    }
    result.exhausted = level_begin == result.nodes.size();
    return result;
}

bool is_disciplined(const TransitionSystem& ts, std::span<const InfoEvent> events) {
    std::vector<bool> known(ts.num_states(), false);
    known[index(ts.init())] = true;
    for (const InfoEvent& e : events) {
        if (const auto* s = std::get_if<StateId>(&e)) {
            if (index(*s) >= ts.num_states() || !known[index(*s)]) {
                return false;
            }
        } else {
            const auto& t = std::get<Transition>(e);
            if (!ts.contains(t) || !known[index(t.origin)]) {
                return false;
            }
            known[index(t.target)] = true;
        }
    }
    return true;
}

Info replay(const InformationSource& src, std::span<const InfoEvent> events) {
    Info info = src.initial();
    for (const InfoEvent& e : events) {
        info = apply_event(src, std::move(info), e);
    }
    return info;
}

nlohmann::json event_to_json(const InfoEvent& e, const TransitionSystem& ts) {
    if (const auto* s = std::get_if<StateId>(&e)) {
        return {{"refine", ts.state_name(*s)}};
    }
    return {{"update", transition_to_json(std::get<Transition>(e), ts)}};
}

}  // namespace dynsearch
