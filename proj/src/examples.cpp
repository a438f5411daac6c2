#include "dynsearch/examples.hpp"

#include "dynsearch/embedded_examples.hpp"

namespace dynsearch {

std::string_view running_example_text() {
    return embedded::kRunningExample;
}

std::string_view reopening_example_text() {
    return embedded::kReopeningExample;
}

std::string_view reopening_triggers_text() {
    return embedded::kReopeningTriggers;
}

TransitionSystem running_example() {
    return parse(running_example_text());
}

TransitionSystem reopening_example() {
    return parse(reopening_example_text());
}

HeuristicPtr reopening_heuristic(const TransitionSystem& reopening) {
    return scripted_heuristic(parse_triggers(reopening, reopening_triggers_text()));
}

}  // namespace dynsearch
