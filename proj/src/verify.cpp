#include "dynsearch/verify.hpp"

#include "dynsearch/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dynsearch {

namespace {

std::string fmt(Cost c, const TransitionSystem& ts) {
    return format_cost(c, ts.cost_scale());
}

std::string describe_entry(const OpenEntry& e, const TransitionSystem& ts) {
    return "(" + ts.state_name(e.state) + ", " + fmt(e.g, ts) + ", " + fmt(e.h, ts) + ")";
}

TheoremReport named(std::string theorem) {
    TheoremReport report;
    report.theorem = std::move(theorem);
    return report;
}

BatteryCheck named_check(std::string name) {
    BatteryCheck check;
    check.name = std::move(name);
    return check;
}

}  // namespace

nlohmann::json TheoremReport::to_json() const {
    nlohmann::json out = {{"theorem", theorem}, {"holds", holds}};
    if (!holds) {
        nlohmann::json violation = {{"expected", expected}, {"actual", actual}};
        if (event_index) {
            violation["event_index"] = *event_index;
        }
        out["violation"] = violation;
    }
    if (!context.empty()) {
        out["context"] = context;
    }
    return out;
}

TheoremReport assert_optimal(const SearchResult& result, const TransitionSystem& ts) {
    TheoremReport report = named("optimal");
    const Cost optimal = optimal_solution_cost(ts);
    report.expected = optimal.is_infinite() ? "UNSOLVABLE" : "SOLUTION cost " + fmt(optimal, ts);
    switch (result.outcome) {
    case Outcome::Solution:
        report.actual = "SOLUTION cost " + fmt(result.cost, ts);
        report.holds = result.cost == optimal;
        break;
    case Outcome::Unsolvable:
        report.actual = "UNSOLVABLE";
        report.holds = optimal.is_infinite();
        break;
    case Outcome::StepLimit:
        report.actual = "STEP_LIMIT";
        report.holds = false;
        break;
    }
    return report;
}

TheoremReport popped_f_nondecreasing(const Trace& trace, const TransitionSystem& ts) {
    TheoremReport report = named("f-monotone");
    std::optional<Cost> last;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto* pop = std::get_if<ev::Pop>(&trace[k].data);
        if (pop == nullptr) {
            continue;
        }
        const Cost f = pop->entry.f();
        if (last && f < *last) {
            report.holds = false;
            report.event_index = k;
            report.expected = "f >= " + fmt(*last, ts);
            report.actual = "pop " + describe_entry(pop->entry, ts) + " with f = " + fmt(f, ts);
            return report;
        }
        last = f;
    }
    return report;
}

std::size_t reopen_count(const Trace& trace) {
    return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const TraceEvent& e) {
        return std::holds_alternative<ev::Reopen>(e.data);
    }));
}

TheoremReport no_reopening(const Trace& trace, const TransitionSystem& ts) {
    TheoremReport report = named("no-reopening");
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (const auto* r = std::get_if<ev::Reopen>(&trace[k].data)) {
            report.holds = false;
            report.event_index = k;
            report.expected = "no reopening";
            report.actual = "reopen " + ts.state_name(r->state) + " g " + fmt(r->old_g, ts) + " -> " +
                            fmt(r->new_g, ts) + " (" + std::to_string(reopen_count(trace)) + " in total)";
            return report;
        }
    }
    return report;
}

TheoremReport optex(const Trace& trace, const TransitionSystem& ts) {
    TheoremReport report = named("optex");
    const CostTable gstar = gstar_all(ts);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (const auto* x = std::get_if<ev::Expand>(&trace[k].data)) {
            if (x->g != gstar[x->state]) {
                report.holds = false;
                report.event_index = k;
                report.expected = "g*(" + ts.state_name(x->state) + ") = " + fmt(gstar[x->state], ts);
                report.actual = "expand (" + ts.state_name(x->state) + ", " + fmt(x->g, ts) + ", " +
                                fmt(x->h, ts) + ")";
                return report;
            }
        }
    }
    return report;
}

std::vector<OpenEntry> open_snapshot(const Trace& trace, std::size_t event_count) {
    std::vector<OpenEntry> open;
    event_count = std::min(event_count, trace.size());
    for (std::size_t k = 0; k < event_count; ++k) {
        if (const auto* ins = std::get_if<ev::Insert>(&trace[k].data)) {
            open.push_back(ins->entry);
        } else if (const auto* pop = std::get_if<ev::Pop>(&trace[k].data)) {
            auto it = std::find(open.begin(), open.end(), pop->entry);
            if (it != open.end()) {
                open.erase(it);
            }
        }
    }
    std::sort(open.begin(), open.end(), pops_before);
    return open;
}

std::optional<std::size_t> end_of_expansion(const Trace& trace, StateId s, std::size_t n) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto* x = std::get_if<ev::Expand>(&trace[k].data);
        if (x == nullptr || x->state != s) {
            continue;
        }
        if (n-- > 0) {
            continue;
        }
        const auto iteration = trace[k].t.i;
        std::size_t end = k + 1;
        while (end < trace.size() && trace[end].t.i == iteration &&
               !std::holds_alternative<ev::Return>(trace[end].data)) {
            ++end;
        }
        return end;
    }
    return std::nullopt;
}

std::vector<StateId> expansion_order(const Trace& trace) {
    std::vector<StateId> order;
    for (const auto& e : trace) {
        if (const auto* x = std::get_if<ev::Expand>(&e.data)) {
            order.push_back(x->state);
        }
    }
    return order;
}

std::vector<Cost> popped_f_values(const Trace& trace) {
    std::vector<Cost> values;
    for (const auto& e : trace) {
        if (const auto* p = std::get_if<ev::Pop>(&e.data)) {
            values.push_back(p->entry.f());
        }
    }
    return values;
}

SearchResult result_from_trace(const Trace& trace) {
    SearchResult result;
    result.cost = kInfinity;
    std::size_t open_size = 0;
    for (const auto& e : trace) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, ev::Insert>) {
                    ++open_size;
                    result.stats.max_open_size = std::max<std::uint64_t>(result.stats.max_open_size, open_size);
                } else if constexpr (std::is_same_v<T, ev::Pop>) {
                    --open_size;
                    ++result.stats.pops;
                } else if constexpr (std::is_same_v<T, ev::DuplicateDrop>) {
                    ++result.stats.duplicate_drops;
                } else if constexpr (std::is_same_v<T, ev::Reevaluate>) {
                    ++result.stats.reevaluations;
                } else if constexpr (std::is_same_v<T, ev::Reopen>) {
                    ++result.stats.reopenings;
                } else if constexpr (std::is_same_v<T, ev::Expand>) {
                    ++result.stats.expansions;
                } else if constexpr (std::is_same_v<T, ev::Update>) {
                    ++result.stats.generated;
                } else if constexpr (std::is_same_v<T, ev::Return>) {
                    result.outcome = x.outcome;
                    if (x.cost) {
                        result.cost = *x.cost;
                    }
                }
            },
            e.data);
    }
    return result;
}

std::vector<InfoEvent> information_events(const Trace& trace) {
    std::vector<InfoEvent> events;
    for (const auto& e : trace) {
        if (const auto* u = std::get_if<ev::Update>(&e.data)) {
            events.emplace_back(u->t);
        } else if (const auto* r = std::get_if<ev::Refine>(&e.data)) {
            events.emplace_back(r->state);
        }
    }
    return events;
}

TransitionSystem random_instance(std::uint64_t seed, const InstanceShape& shape) {
    std::mt19937_64 rng(seed);
    GeneratorParams params;
    params.seed = rng();
    params.n_states = std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, shape.max_states))(rng);
    params.max_cost = Cost::from_units(shape.max_cost);
    const std::size_t capacity = params.n_states * params.n_states * static_cast<std::size_t>(shape.max_cost + 1);
    params.n_transitions =
        std::uniform_int_distribution<std::size_t>(0, std::min(shape.max_transitions, capacity))(rng);
    params.n_goals = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    return generate_random(params);
}

bool BatteryReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BatteryCheck& c) { return c.failures.empty(); });
}

nlohmann::json BatteryReport::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks) {
        out.push_back({{"check", c.name},
                       {"runs", c.runs},
                       {"failures", c.failures.size()},
                       {"first_failures",
                        std::vector<std::string>(c.failures.begin(),
                                                 c.failures.begin() + std::min<std::size_t>(5, c.failures.size()))}});
    }
    return {{"passed", all_passed()}, {"checks", out}};
}

BatteryReport theorem_battery(const BatteryConfig& config) {
    BatteryCheck consistent = named_check("consistent-monotone reeval: no reopening, optex, f-monotone, optimal");
    BatteryCheck admissible = named_check("admissible-only and hlm, both reeval settings: optimal");
    BatteryCheck statics = named_check("static h*: reeval-invariant trace, all checks");

    for (std::size_t k = 0; k < config.seeds; ++k) {
        const std::uint64_t seed = config.base_seed + k;
        const TransitionSystem ts = random_instance(seed, config.shape);
        auto tag = [&](const std::string& what, const TheoremReport& r) {
            return "seed " + std::to_string(seed) + " " + what + ": " + r.theorem + " expected " + r.expected +
                   ", got " + r.actual;
        };

        {
            auto h = oracle_family(ts, OracleFlavor::ConsistentMonotone, seed);
            const auto result = search(ts, *h, {.reeval = true});
            ++consistent.runs;
            for (const auto& r : {no_reopening(result.trace, ts), optex(result.trace, ts),
                                  popped_f_nondecreasing(result.trace, ts), assert_optimal(result, ts)}) {
                if (!r.holds) {
                    consistent.failures.push_back(tag("consistent-monotone", r));
                }
            }
        }

        for (bool reeval : {false, true}) {
            const std::string suffix = reeval ? " reeval" : "";
            for (const auto& [name, h] : {std::pair{std::string("admissible-only"),
                                                    oracle_family(ts, OracleFlavor::AdmissibleOnly, seed)},
                                          std::pair{std::string("hlm"), hlm(ts)}}) {
                const auto result = search(ts, *h, {.reeval = reeval});
                ++admissible.runs;
                if (auto r = assert_optimal(result, ts); !r.holds) {
                    admissible.failures.push_back(tag(name + suffix, r));
                }
            }
        }

        {
            auto h = static_adapter(hstar_all(ts), "h*");
            const auto off = search(ts, *h, {.reeval = false});
            const auto on = search(ts, *h, {.reeval = true});
            ++statics.runs;
            if (write_trace(off.trace, ts) != write_trace(on.trace, ts)) {
                statics.failures.push_back("seed " + std::to_string(seed) + ": traces differ between reeval settings");
            }
            for (const auto& r : {no_reopening(on.trace, ts), optex(on.trace, ts),
                                  popped_f_nondecreasing(on.trace, ts), assert_optimal(on, ts)}) {
                if (!r.holds) {
                    statics.failures.push_back(tag("static h*", r));
                }
            }
        }
    }
    return {{consistent, admissible, statics}};
}

}  // namespace dynsearch
