#include "dynsearch/json_io.hpp"

#include "dynsearch/error.hpp"

#include <stdexcept>

namespace dynsearch {

nlohmann::json cost_to_json(Cost c, const TransitionSystem& ts) {
    if (c.is_finite() && ts.cost_scale() == 1) {
        return c.units();
    }
    return format_cost(c, ts.cost_scale());
}

Cost cost_from_json(const nlohmann::json& j, const TransitionSystem& ts) {
    try {
        if (j.is_string()) {
            return parse_cost(j.get<std::string>(), ts.cost_scale());
        }
        if (j.is_number()) {
            return parse_cost(j.dump(), ts.cost_scale());
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0, 0);
    }
    throw ParseError("expected a cost value, got " + j.dump(), 0, 0);
}

nlohmann::json transition_to_json(const Transition& t, const TransitionSystem& ts) {
    return nlohmann::json::array({ts.state_name(t.origin), ts.label_name(t.label), ts.state_name(t.target)});
}

Transition transition_from_json(const nlohmann::json& j, const TransitionSystem& ts) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_string() || !j[1].is_string() || !j[2].is_string()) {
        throw ParseError("expected a transition [origin, label, target], got " + j.dump(), 0, 0);
    }
    auto origin = ts.find_state(j[0].get<std::string>());
    auto label = ts.find_label(j[1].get<std::string>());
    auto target = ts.find_state(j[2].get<std::string>());
    if (!origin || !label || !target) {
        throw ParseError("unknown state or label in transition " + j.dump(), 0, 0);
    }
    Transition t{*origin, *label, *target};
    if (!ts.contains(t)) {
        throw ParseError("no such transition " + j.dump(), 0, 0);
    }
    return t;
}

StateId state_from_json(const nlohmann::json& j, const TransitionSystem& ts) {
    if (!j.is_string()) {
        throw ParseError("expected a state name, got " + j.dump(), 0, 0);
    }
    auto s = ts.find_state(j.get<std::string>());
    if (!s) {
        throw ParseError("unknown state '" + j.get<std::string>() + "'", 0, 0);
    }
    return *s;
}

}  // namespace dynsearch
