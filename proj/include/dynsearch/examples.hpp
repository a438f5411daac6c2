#ifndef DYNSEARCH_EXAMPLES_HPP
#define DYNSEARCH_EXAMPLES_HPP

#include "dynsearch/heuristics.hpp"

#include <string_view>

namespace dynsearch {

/// Built-in copies of data/running_example.ts, data/reopening_example.ts and
/// data/reopening_triggers.json.
std::string_view running_example_text();
std::string_view reopening_example_text();
std::string_view reopening_triggers_text();

/// States A..D, labels x = 1 and y = 2, goal D.
TransitionSystem running_example();

/// States A..F, goal F; D is reopened without re-evaluation.
TransitionSystem reopening_example();

/// Scripted heuristic for reopening_example(): h(A) = 1, and B, C, D, E rise
/// to 1, 1, 3, 4 when reached along A->B, A->C, B->D, C->E.
HeuristicPtr reopening_heuristic(const TransitionSystem& reopening);

}  // namespace dynsearch

#endif
