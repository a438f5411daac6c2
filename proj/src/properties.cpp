#include "dynsearch/properties.hpp"

#include "dynsearch/json_io.hpp"

#include <stdexcept>

namespace dynsearch {

namespace {

struct PropertyName {
    Property property;
    const char* name;
};

constexpr PropertyName kPropertyNames[] = {
    {Property::DynSafe, "dyn-safe"},
    {Property::DynAdmissible, "dyn-admissible"},
    {Property::DynConsistent, "dyn-consistent"},
    {Property::PartialDynConsistent, "partial-dyn-consistent"},
    {Property::DynGoalAware, "dyn-goal-aware"},
    {Property::DynMonotone, "dyn-monotone"},
};

std::string fmt(Cost c, const TransitionSystem& ts) {
    return format_cost(c, ts.cost_scale());
}

Info apply(const InformationSource& src, const Info& info, const InfoEvent& e) {
    if (const auto* s = std::get_if<StateId>(&e)) {
        return src.refine(info, *s);
    }
    return src.update(info, std::get<Transition>(e));
}

class Checker {
public:
    Checker(const TransitionSystem& ts, const DynamicHeuristic& h, Property property)
        : ts_(ts), h_(h), property_(property) {
        if (property == Property::DynSafe || property == Property::DynAdmissible) {
            hstar_ = hstar_all(ts);
        }
        if (property == Property::PartialDynConsistent) {
            distances_ = all_pairs_costs(ts);
        }
    }

    /// Violations of a state-wise property at one information object.
    std::vector<Violation> at_info(const Info& info, const std::vector<InfoEvent>& witness) const {
        std::vector<Violation> out;
        auto make = [&](StateId s, Cost lhs, Cost rhs, std::string text) {
            Violation v;
            v.witness = witness;
            v.state = s;
            v.lhs = lhs;
            v.rhs = rhs;
            v.inequality = std::move(text);
            return v;
        };
        switch (property_) {
        case Property::DynSafe:
            for (std::size_t i = 0; i < ts_.num_states(); ++i) {
                const Cost hv = h_.eval(state_id(i), info);
                if (hv.is_infinite() && hstar_.values[i].is_finite()) {
                    out.push_back(make(state_id(i), hv, hstar_.values[i],
                                       "inf = h but h* = " + fmt(hstar_.values[i], ts_)));
                }
            }
            break;
        case Property::DynAdmissible:
            for (std::size_t i = 0; i < ts_.num_states(); ++i) {
                const Cost hv = h_.eval(state_id(i), info);
                if (hv > hstar_.values[i]) {
                    out.push_back(make(state_id(i), hv, hstar_.values[i],
                                       fmt(hv, ts_) + " > " + fmt(hstar_.values[i], ts_)));
                }
            }
            break;
        case Property::DynGoalAware:
            for (StateId g : ts_.goals()) {
                const Cost hv = h_.eval(g, info);
                if (hv != Cost::zero()) {
                    out.push_back(make(g, hv, Cost::zero(), fmt(hv, ts_) + " > 0"));
                }
            }
            break;
        case Property::DynConsistent:
            for (const Transition& t : ts_.transitions()) {
                const Cost lhs = h_.eval(t.origin, info);
                const Cost rhs = h_.eval(t.target, info);
                const Cost edge = ts_.cost(t);
                if (lhs > edge + rhs) {
                    Violation v = make(t.origin, lhs, rhs,
                                       fmt(lhs, ts_) + " > " + fmt(edge, ts_) + " + " + fmt(rhs, ts_));
                    v.other_state = t.target;
                    v.transition = t;
                    v.edge = edge;
                    out.push_back(std::move(v));
                }
            }
            break;
        case Property::PartialDynConsistent:
            for (std::size_t a = 0; a < ts_.num_states(); ++a) {
                if (!h_.source()->defined_at(info, state_id(a))) {
                    continue;
                }
                const Cost lhs = h_.eval(state_id(a), info);
                for (std::size_t b = 0; b < ts_.num_states(); ++b) {
                    const Cost d = distances_[a].values[b];
                    if (d.is_infinite() || !h_.source()->defined_at(info, state_id(b))) {
                        continue;
                    }
                    const Cost rhs = h_.eval(state_id(b), info);
                    if (lhs > d + rhs) {
                        Violation v = make(state_id(a), lhs, rhs,
                                           fmt(lhs, ts_) + " > " + fmt(d, ts_) + " + " + fmt(rhs, ts_));
                        v.other_state = state_id(b);
                        v.edge = d;
                        out.push_back(std::move(v));
                    }
                }
            }
            break;
        case Property::DynMonotone:
            throw std::logic_error("dyn-monotone is checked per event");
        }
        return out;
    }

    /// Violations of dyn-monotone for one event applied to an object.
    std::vector<Violation> at_event(const Info& before, const Info& after, const std::vector<InfoEvent>& witness,
                                    const InfoEvent& e) const {
        std::vector<Violation> out;
        for (std::size_t i = 0; i < ts_.num_states(); ++i) {
            const Cost old_h = h_.eval(state_id(i), before);
            const Cost new_h = h_.eval(state_id(i), after);
            if (old_h > new_h) {
                Violation v;
                v.witness = witness;
                v.state = state_id(i);
                v.event = e;
                v.lhs = old_h;
                v.rhs = new_h;
                v.inequality = fmt(old_h, ts_) + " > " + fmt(new_h, ts_);
                out.push_back(std::move(v));
            }
        }
        return out;
    }

private:
    const TransitionSystem& ts_;
    const DynamicHeuristic& h_;
    Property property_;
    CostTable hstar_;
    std::vector<CostTable> distances_;
};

}  // namespace

std::string to_string(Property p) {
    for (const auto& entry : kPropertyNames) {
        if (entry.property == p) {
            return entry.name;
        }
    }
    throw std::logic_error("unknown property");
}

Property parse_property(std::string_view name) {
    for (const auto& entry : kPropertyNames) {
        if (name == entry.name) {
            return entry.property;
        }
    }
    throw std::invalid_argument("unknown property '" + std::string(name) + "'");
}

const std::vector<Property>& all_properties() {
    static const std::vector<Property> props = [] {
        std::vector<Property> out;
        for (const auto& entry : kPropertyNames) {
            out.push_back(entry.property);
        }
        return out;
    }();
    return props;
}

std::string to_string(Holds h) {
    switch (h) {
    case Holds::Yes:
        return "yes";
    case Holds::No:
        return "no";
    case Holds::BoundedYes:
        return "bounded-yes";
    }
    throw std::logic_error("unknown verdict");
}

nlohmann::json Violation::to_json(const TransitionSystem& ts) const {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : witness) {
        events.push_back(event_to_json(e, ts));
    }
    nlohmann::json out = {
        {"events", events},
        {"state", ts.state_name(state)},
        {"lhs", cost_to_json(lhs, ts)},
        {"rhs", cost_to_json(rhs, ts)},
        {"inequality", inequality},
    };
    if (other_state) {
        out["other_state"] = ts.state_name(*other_state);
    }
    if (transition) {
        out["transition"] = transition_to_json(*transition, ts);
    }
    if (edge) {
        out["edge"] = cost_to_json(*edge, ts);
    }
    if (event) {
        out["after_event"] = event_to_json(*event, ts);
    }
    return out;
}

nlohmann::json PropertyVerdict::to_json(const TransitionSystem& ts) const {
    nlohmann::json out = {
        {"property", to_string(property)},
        {"holds", to_string(holds)},
        {"depth_bound", depth_bound},
        {"infos_checked", infos_checked},
        {"exhausted", exhausted},
    };
    if (witness) {
        out["witness"] = witness->to_json(ts);
        nlohmann::json all = nlohmann::json::array();
        for (const auto& v : violations_at_witness) {
            all.push_back(v.to_json(ts));
        }
        out["violations_at_witness"] = all;
    }
    if (!note.empty()) {
        out["note"] = note;
    }
    return out;
}

PropertyVerdict check_property(const TransitionSystem& ts, const DynamicHeuristic& h, Property property,
                               EnumerationOptions options) {
    if (options.depth_bound == 0) {
        options.depth_bound = default_depth_bound(ts);
    }
    return check_property(ts, h, property, enumerate_reachable_infos(ts, *h.source(), options));
}

PropertyVerdict check_property(const TransitionSystem& ts, const DynamicHeuristic& h, Property property,
                               const ReachableSet& reachable) {
    PropertyVerdict verdict;
    verdict.property = property;
    verdict.depth_bound = reachable.depth_bound;
    verdict.exhausted = reachable.exhausted;
    verdict.infos_checked = reachable.infos.size();
    if (property == Property::PartialDynConsistent) {
        verdict.note = "checked on reachable information objects only";
    }

    const Checker checker(ts, h, property);
    auto record = [&](std::vector<Violation> found) {
        if (found.empty()) {
            return false;
        }
        verdict.holds = Holds::No;
        verdict.witness = found.front();
        verdict.violations_at_witness = std::move(found);
        return true;
    };

    if (property == Property::DynMonotone) {
        // Nodes come in BFS order with minimal witnesses; events in witness order.
        for (const ReachableNode& node : reachable.nodes) {
            const Info& before = reachable.infos[node.info_index].info;
            for (const InfoEvent& e : allowed_events(ts, node.known)) {
                if (record(checker.at_event(before, apply(*h.source(), before, e), node.witness, e))) {
                    return verdict;
                }
            }
        }
        return verdict;
    }
    for (const ReachableInfo& ri : reachable.infos) {
        if (record(checker.at_info(ri.info, ri.witness))) {
            return verdict;
        }
    }
    return verdict;
}

Holds check_static_property(const TransitionSystem& ts, const CostTable& table, Property property) {
    if (table.size() != ts.num_states()) {
        throw std::invalid_argument("table does not cover every state");
    }
    auto verdict = [](bool ok) { return ok ? Holds::Yes : Holds::No; };
    switch (property) {
    case Property::DynSafe: {
        const CostTable hstar = hstar_all(ts);
        for (std::size_t i = 0; i < ts.num_states(); ++i) {
            if (table.values[i].is_infinite() && hstar.values[i].is_finite()) {
                return Holds::No;
            }
        }
        return Holds::Yes;
    }
    case Property::DynAdmissible:
        return verdict(table_admissible(ts, table));
    case Property::DynConsistent:
        return verdict(table_consistent(ts, table));
    case Property::PartialDynConsistent: {
        const auto distances = all_pairs_costs(ts);
        for (std::size_t a = 0; a < ts.num_states(); ++a) {
            for (std::size_t b = 0; b < ts.num_states(); ++b) {
                if (distances[a].values[b].is_finite() && table.values[a] > distances[a].values[b] + table.values[b]) {
                    return Holds::No;
                }
            }
        }
        return Holds::Yes;
    }
    case Property::DynGoalAware:
        for (StateId g : ts.goals()) {
            if (table[g] != Cost::zero()) {
                return Holds::No;
            }
        }
        return Holds::Yes;
    case Property::DynMonotone:
        return Holds::Yes;
    }
    throw std::logic_error("unknown property");
}

}  // namespace dynsearch
