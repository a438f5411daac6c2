#ifndef DYNSEARCH_JSON_IO_HPP
#define DYNSEARCH_JSON_IO_HPP

#include "dynsearch/transition_system.hpp"

#include <json.hpp>

namespace dynsearch {

/// Integer when the system's scale is 1 and the cost is finite, otherwise the
/// decimal literal ("1.25", "inf").
nlohmann::json cost_to_json(Cost c, const TransitionSystem& ts);

/// Accepts numbers and cost literals. Throws ParseError.
Cost cost_from_json(const nlohmann::json& j, const TransitionSystem& ts);

/// [origin, label, target] by name.
nlohmann::json transition_to_json(const Transition& t, const TransitionSystem& ts);

/// Inverse of transition_to_json; the triple must exist in ts. Throws ParseError.
Transition transition_from_json(const nlohmann::json& j, const TransitionSystem& ts);

/// State by name. Throws ParseError.
StateId state_from_json(const nlohmann::json& j, const TransitionSystem& ts);

}  // namespace dynsearch

#endif
