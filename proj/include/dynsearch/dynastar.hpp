#ifndef DYNSEARCH_DYNASTAR_HPP
#define DYNSEARCH_DYNASTAR_HPP

#include "dynsearch/heuristics.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dynsearch {

/// (iteration, step within iteration), ordered lexicographically.
struct Time {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    friend auto operator<=>(const Time&, const Time&) = default;
};

/// Open-list entry; g and h are frozen at insertion.
struct OpenEntry {
    StateId state{};
    Cost g;
    Cost h;
    std::uint64_t seq = 0;

    Cost f() const { return g + h; }
    friend bool operator==(const OpenEntry&, const OpenEntry&) = default;
};

/// Priority order: f, then h, then insertion order.
bool pops_before(const OpenEntry& a, const OpenEntry& b);

enum class InsertReason { Initial, New, Cheaper, Reeval };
enum class PruneWhere { Initial, Reeval, Successor };
enum class Outcome { Solution, Unsolvable, StepLimit };

std::string to_string(InsertReason r);
std::string to_string(PruneWhere w);
std::string to_string(Outcome o);

namespace ev {
struct Insert {
    OpenEntry entry;
    InsertReason reason{};
    friend bool operator==(const Insert&, const Insert&) = default;
};
struct Pop {
    OpenEntry entry;
    friend bool operator==(const Pop&, const Pop&) = default;
};
struct DuplicateDrop {
    OpenEntry entry;
    friend bool operator==(const DuplicateDrop&, const DuplicateDrop&) = default;
};
struct Reevaluate {
    StateId state{};
    Cost old_h;
    Cost new_h;
    friend bool operator==(const Reevaluate&, const Reevaluate&) = default;
};
struct Close {
    StateId state{};
    friend bool operator==(const Close&, const Close&) = default;
};
struct Reopen {
    StateId state{};
    Cost old_g;
    Cost new_g;
    friend bool operator==(const Reopen&, const Reopen&) = default;
};
/// g is the current g of the state, h the value stored in the popped entry,
/// h_now the current heuristic value.
struct Expand {
    StateId state{};
    Cost g;
    Cost h;
    Cost h_now;
    friend bool operator==(const Expand&, const Expand&) = default;
};
struct Update {
    Transition t;
    friend bool operator==(const Update&, const Update&) = default;
};
struct Refine {
    StateId state{};
    friend bool operator==(const Refine&, const Refine&) = default;
};
struct Prune {
    StateId state{};
    PruneWhere where{};
    friend bool operator==(const Prune&, const Prune&) = default;
};
struct Return {
    Outcome outcome{};
    std::optional<Cost> cost;
    friend bool operator==(const Return&, const Return&) = default;
};
}  // namespace ev

using EventData = std::variant<ev::Insert, ev::Pop, ev::DuplicateDrop, ev::Reevaluate, ev::Close, ev::Reopen,
                               ev::Expand, ev::Update, ev::Refine, ev::Prune, ev::Return>;

struct TraceEvent {
    Time t;
    EventData data;
    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

struct SearchConfig {
    bool reeval = false;
    /// Off deviates from the algorithm: cheaper paths to closed states are
    /// ignored instead of reopening them.
    bool reopen = true;
    /// Maximum number of pops.
    std::uint64_t step_limit = 1'000'000;
    bool record_trace = true;
};

struct SearchStats {
    std::uint64_t pops = 0;
    std::uint64_t expansions = 0;
    std::uint64_t reevaluations = 0;
    std::uint64_t reopenings = 0;
    std::uint64_t duplicate_drops = 0;
    std::uint64_t generated = 0;
    std::uint64_t max_open_size = 0;
};

struct SearchResult {
    Outcome outcome = Outcome::Unsolvable;
    Path path;
    Cost cost;
    SearchStats stats;
    Trace trace;
    /// False when the run used reopen = false.
    bool conforming = true;
};

SearchResult search(const TransitionSystem& ts, const DynamicHeuristic& h, const SearchConfig& config = {});

nlohmann::json stats_to_json(const SearchStats& stats);
nlohmann::json result_to_json(const SearchResult& result, const TransitionSystem& ts);

/// One JSON object: {"t": [i, j], "event": "<name>", ...}.
nlohmann::ordered_json event_to_json(const TraceEvent& e, const TransitionSystem& ts);
TraceEvent event_from_json(const nlohmann::json& j, const TransitionSystem& ts);

/// One event per line.
std::string write_trace(const Trace& trace, const TransitionSystem& ts);
/// Throws ParseError with the offending line.
Trace read_trace(std::string_view text, const TransitionSystem& ts);

}  // namespace dynsearch

#endif
