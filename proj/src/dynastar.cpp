#include "dynsearch/dynastar.hpp"

#include "dynsearch/json_io.hpp"
#include "dynsearch/overloaded.hpp"

#include <queue>
#include <sstream>
#include <stdexcept>

namespace dynsearch {

bool pops_before(const OpenEntry& a, const OpenEntry& b) {
    const Cost fa = a.f();
    const Cost fb = b.f();
    if (fa != fb) {
        return fa < fb;
    }
    if (a.h != b.h) {
        return a.h < b.h;
    }
    return a.seq < b.seq;
}

std::string to_string(InsertReason r) {
    switch (r) {
    case InsertReason::Initial:
        return "initial";
    case InsertReason::New:
        return "new";
    case InsertReason::Cheaper:
        return "cheaper";
    case InsertReason::Reeval:
        return "reeval";
    }
    throw std::logic_error("unknown insert reason");
}

std::string to_string(PruneWhere w) {
    switch (w) {
    case PruneWhere::Initial:
        return "initial";
    case PruneWhere::Reeval:
        return "reeval";
    case PruneWhere::Successor:
        return "successor";
    }
    throw std::logic_error("unknown prune location");
}

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Solution:
        return "SOLUTION";
    case Outcome::Unsolvable:
        return "UNSOLVABLE";
    case Outcome::StepLimit:
        return "STEP_LIMIT";
    }
    throw std::logic_error("unknown outcome");
}

namespace {

struct LaterPop {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const { return pops_before(b, a); }
};

class Run {
public:
    Run(const TransitionSystem& ts, const DynamicHeuristic& h, const SearchConfig& config)
        : ts_(ts),
          h_(h),
          config_(config),
          src_p_(parent_source(ts)),
          info_p_(src_p_->initial()),
          info_h_(h.source()->initial()),
          known_(ts.num_states(), false),
          closed_(ts.num_states(), false) {
        result_.conforming = config.reopen;
    }

    SearchResult execute() {
        known_[index(ts_.init())] = true;
        const Cost h_init = h_now(ts_.init());
        if (h_init.is_finite()) {
            insert(ts_.init(), h_init, InsertReason::Initial);
        } else {
            emit(ev::Prune{ts_.init(), PruneWhere::Initial});
        }

        while (!open_.empty()) {
            if (result_.stats.pops >= config_.step_limit) {
                return finish(Outcome::StepLimit);
            }
            ++time_.i;
            time_.j = 0;
            const OpenEntry entry = open_.top();
            open_.pop();
            ++result_.stats.pops;
            emit(ev::Pop{entry});
            const StateId s = entry.state;
            if (closed_[index(s)]) {
                ++result_.stats.duplicate_drops;
                emit(ev::DuplicateDrop{entry});
                continue;
            }

            info_p_ = src_p_->refine(std::move(info_p_), s);
            info_h_ = h_.source()->refine(std::move(info_h_), s);
            time_.j = 1;
            emit(ev::Refine{s});

            const Cost h_current = h_now(s);
            if (config_.reeval && entry.h < h_current) {
                ++result_.stats.reevaluations;
                emit(ev::Reevaluate{s, entry.h, h_current});
                if (h_current.is_finite()) {
                    insert(s, h_current, InsertReason::Reeval);
                } else {
                    emit(ev::Prune{s, PruneWhere::Reeval});
                }
                continue;
            }

            closed_[index(s)] = true;
            emit(ev::Close{s});
            ++result_.stats.expansions;
            emit(ev::Expand{s, g_now(s), entry.h, h_current});
            if (ts_.is_goal(s)) {
                result_.path = extract_path(info_p_, s);
                result_.cost = path_cost(ts_, result_.path);
                return finish(Outcome::Solution);
            }

            for (const Transition& t : ts_.successors(s)) {
                const StateId succ = t.target;
                std::optional<Cost> g_old;
                if (known_[index(succ)]) {
                    g_old = g_now(succ);
                }
                info_p_ = src_p_->update(std::move(info_p_), t);
                info_h_ = h_.source()->update(std::move(info_h_), t);
                ++time_.j;
                ++result_.stats.generated;
                emit(ev::Update{t});
                known_[index(succ)] = true;

                const Cost h_succ = h_now(succ);
                if (h_succ.is_infinite()) {
                    emit(ev::Prune{succ, PruneWhere::Successor});
                    continue;
                }
                const Cost g_new = g_now(succ);
                if (!g_old) {
                    insert(succ, h_succ, InsertReason::New);
                } else if (*g_old > g_new) {
                    if (closed_[index(succ)]) {
                        if (!config_.reopen) {
                            continue;
                        }
                        closed_[index(succ)] = false;
                        ++result_.stats.reopenings;
                        emit(ev::Reopen{succ, *g_old, g_new});
                    }
                    insert(succ, h_succ, InsertReason::Cheaper);
                }
            }
        }
        return finish(Outcome::Unsolvable);
    }

private:
    Cost g_now(StateId s) const {
        auto g = stored_g(info_p_, s);
        if (!g) {
            throw ContractViolation("no g-value for known state " + ts_.state_name(s));
        }
        return *g;
    }

    Cost h_now(StateId s) const { return h_.eval(s, info_h_); }

    void insert(StateId s, Cost h, InsertReason reason) {
        OpenEntry entry{s, g_now(s), h, next_seq_++};
        open_.push(entry);
        result_.stats.max_open_size = std::max<std::uint64_t>(result_.stats.max_open_size, open_.size());
        emit(ev::Insert{entry, reason});
    }

    void emit(EventData data) {
        if (config_.record_trace) {
            result_.trace.push_back({time_, std::move(data)});
        }
    }

    SearchResult finish(Outcome outcome) {
        result_.outcome = outcome;
        std::optional<Cost> cost;
        if (outcome == Outcome::Solution) {
            cost = result_.cost;
        } else {
            result_.cost = kInfinity;
        }
        emit(ev::Return{outcome, cost});
        return std::move(result_);
    }

    const TransitionSystem& ts_;
    const DynamicHeuristic& h_;
    SearchConfig config_;
    std::shared_ptr<const ParentSource> src_p_;
    Info info_p_;
    Info info_h_;
    std::vector<bool> known_;
    std::vector<bool> closed_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, LaterPop> open_;
    std::uint64_t next_seq_ = 0;
    Time time_;
    SearchResult result_;
};

nlohmann::ordered_json entry_fields(nlohmann::ordered_json out, const OpenEntry& e, const TransitionSystem& ts) {
    out["state"] = ts.state_name(e.state);
    out["g"] = cost_to_json(e.g, ts);
    out["h"] = cost_to_json(e.h, ts);
    out["seq"] = e.seq;
    return out;
}

OpenEntry entry_from(const nlohmann::json& j, const TransitionSystem& ts) {
    return {state_from_json(j.at("state"), ts), cost_from_json(j.at("g"), ts), cost_from_json(j.at("h"), ts),
            j.at("seq").get<std::uint64_t>()};
}

template <class Enum>
Enum enum_from(const std::string& name, std::initializer_list<Enum> values) {
    for (Enum v : values) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw ParseError("unknown value '" + name + "'", 0, 0);
}

}  // namespace

SearchResult search(const TransitionSystem& ts, const DynamicHeuristic& h, const SearchConfig& config) {
    return Run(ts, h, config).execute();
}

nlohmann::json stats_to_json(const SearchStats& stats) {
    return {
        {"pops", stats.pops},
        {"expansions", stats.expansions},
        {"reevaluations", stats.reevaluations},
        {"reopenings", stats.reopenings},
        {"duplicate_drops", stats.duplicate_drops},
        {"generated", stats.generated},
        {"max_open_size", stats.max_open_size},
    };
}

nlohmann::json result_to_json(const SearchResult& result, const TransitionSystem& ts) {
    nlohmann::json out = {
        {"outcome", to_string(result.outcome)},
        {"stats", stats_to_json(result.stats)},
        {"conforming", result.conforming},
    };
    if (result.outcome == Outcome::Solution) {
        out["cost"] = cost_to_json(result.cost, ts);
        nlohmann::json path = nlohmann::json::array();
        for (const auto& t : result.path) {
            path.push_back(transition_to_json(t, ts));
        }
        out["path"] = path;
    }
    return out;
}

nlohmann::ordered_json event_to_json(const TraceEvent& e, const TransitionSystem& ts) {
    nlohmann::ordered_json out;
    out["t"] = {e.t.i, e.t.j};
    std::visit(Overloaded{
                   [&](const ev::Insert& x) {
                       out["event"] = "insert";
                       out = entry_fields(std::move(out), x.entry, ts);
                       out["reason"] = to_string(x.reason);
                   },
                   [&](const ev::Pop& x) {
                       out["event"] = "pop";
                       out = entry_fields(std::move(out), x.entry, ts);
                   },
                   [&](const ev::DuplicateDrop& x) {
                       out["event"] = "duplicate_drop";
                       out = entry_fields(std::move(out), x.entry, ts);
                   },
                   [&](const ev::Reevaluate& x) {
                       out["event"] = "reevaluate";
                       out["state"] = ts.state_name(x.state);
                       out["old_h"] = cost_to_json(x.old_h, ts);
                       out["new_h"] = cost_to_json(x.new_h, ts);
                   },
                   [&](const ev::Close& x) {
                       out["event"] = "close";
                       out["state"] = ts.state_name(x.state);
                   },
                   [&](const ev::Reopen& x) {
                       out["event"] = "reopen";
                       out["state"] = ts.state_name(x.state);
                       out["old_g"] = cost_to_json(x.old_g, ts);
                       out["new_g"] = cost_to_json(x.new_g, ts);
                   },
                   [&](const ev::Expand& x) {
                       out["event"] = "expand";
                       out["state"] = ts.state_name(x.state);
                       out["g"] = cost_to_json(x.g, ts);
                       out["h"] = cost_to_json(x.h, ts);
                       out["h_now"] = cost_to_json(x.h_now, ts);
                   },
                   [&](const ev::Update& x) {
                       out["event"] = "update";
                       out["transition"] = transition_to_json(x.t, ts);
                   },
                   [&](const ev::Refine& x) {
                       out["event"] = "refine";
                       out["state"] = ts.state_name(x.state);
                   },
                   [&](const ev::Prune& x) {
                       out["event"] = "prune";
                       out["state"] = ts.state_name(x.state);
                       out["where"] = to_string(x.where);
                   },
                   [&](const ev::Return& x) {
                       out["event"] = "return";
                       out["outcome"] = to_string(x.outcome);
                       if (x.cost) {
                           out["cost"] = cost_to_json(*x.cost, ts);
                       }
                   },
               },
               e.data);
    return out;
}

TraceEvent event_from_json(const nlohmann::json& j, const TransitionSystem& ts) {
    TraceEvent e;
    try {
        const auto& t = j.at("t");
        e.t = {t.at(0).get<std::uint64_t>(), t.at(1).get<std::uint64_t>()};
        const std::string name = j.at("event").get<std::string>();
        auto state = [&] { return state_from_json(j.at("state"), ts); };
        auto cost = [&](const char* key) { return cost_from_json(j.at(key), ts); };
        if (name == "insert") {
            e.data = ev::Insert{entry_from(j, ts),
                                enum_from(j.at("reason").get<std::string>(),
                                          {InsertReason::Initial, InsertReason::New, InsertReason::Cheaper,
                                           InsertReason::Reeval})};
        } else if (name == "pop") {
            e.data = ev::Pop{entry_from(j, ts)};
        } else if (name == "duplicate_drop") {
            e.data = ev::DuplicateDrop{entry_from(j, ts)};
        } else if (name == "reevaluate") {
            e.data = ev::Reevaluate{state(), cost("old_h"), cost("new_h")};
        } else if (name == "close") {
            e.data = ev::Close{state()};
        } else if (name == "reopen") {
            e.data = ev::Reopen{state(), cost("old_g"), cost("new_g")};
        } else if (name == "expand") {
            e.data = ev::Expand{state(), cost("g"), cost("h"), cost("h_now")};
        } else if (name == "update") {
            e.data = ev::Update{transition_from_json(j.at("transition"), ts)};
        } else if (name == "refine") {
            e.data = ev::Refine{state()};
        } else if (name == "prune") {
            e.data = ev::Prune{state(), enum_from(j.at("where").get<std::string>(),
                                                  {PruneWhere::Initial, PruneWhere::Reeval, PruneWhere::Successor})};
        } else if (name == "return") {
            ev::Return r{enum_from(j.at("outcome").get<std::string>(),
                                   {Outcome::Solution, Outcome::Unsolvable, Outcome::StepLimit}),
                         std::nullopt};
            if (j.contains("cost")) {
                r.cost = cost("cost");
            }
            e.data = r;
        } else {
            throw ParseError("unknown trace event '" + name + "'", 0, 0);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed trace event: ") + ex.what(), 0, 0);
    }
    return e;
}

std::string write_trace(const Trace& trace, const TransitionSystem& ts) {
    std::string out;
    for (const auto& e : trace) {
        out += event_to_json(e, ts).dump();
        out += '\n';
    }
    return out;
}

Trace read_trace(std::string_view text, const TransitionSystem& ts) {
    Trace trace;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            trace.push_back(event_from_json(nlohmann::json::parse(line), ts));
        } catch (const nlohmann::json::parse_error& ex) {
            throw ParseError(ex.what(), line_no, 1);
        } catch (const ParseError& ex) {
            throw ParseError(ex.detail(), line_no, 1);
        }
    }
    return trace;
}

}  // namespace dynsearch
