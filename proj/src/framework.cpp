#include "dynsearch/framework.hpp"

#include "dynsearch/json_io.hpp"
#include "dynsearch/overloaded.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynsearch {

namespace {

bool is_progress(const FrameworkOperation& o) {
    return !std::holds_alternative<op::Refine>(o) && !std::holds_alternative<op::GenKnown>(o);
}

}  // namespace

std::string to_string(FrameworkResult r) {
    switch (r) {
    case FrameworkResult::Solvable:
        return "SOLVABLE";
    case FrameworkResult::Unsolvable:
        return "UNSOLVABLE";
    case FrameworkResult::StepLimit:
        return "STEP_LIMIT";
    }
    throw std::logic_error("unknown framework result");
}

nlohmann::json operation_to_json(const FrameworkOperation& o, const TransitionSystem& ts) {
    return std::visit(Overloaded{
                          [&](const op::GenUnknown& g) -> nlohmann::json {
                              return {{"op", "GenUnknown"}, {"transition", transition_to_json(g.t, ts)}};
                          },
                          [&](const op::GenKnown& g) -> nlohmann::json {
                              return {{"op", "GenKnown"}, {"transition", transition_to_json(g.t, ts)}};
                          },
                          [&](const op::Refine& r) -> nlohmann::json {
                              return {{"op", "Refine"}, {"state", ts.state_name(r.s)}};
                          },
                          [](const op::DeclareSolvable&) -> nlohmann::json { return {{"op", "DeclareSolvable"}}; },
                          [](const op::DeclareUnsolvable&) -> nlohmann::json {
                              return {{"op", "DeclareUnsolvable"}};
                          },
                      },
                      o);
}

Framework::Framework(const TransitionSystem& ts, std::vector<SourcePtr> sources)
    : ts_(ts), sources_(std::move(sources)) {}

FrameworkState Framework::initial_state() const {
    FrameworkState st;
    for (const auto& src : sources_) {
        st.infos.push_back(src->initial());
    }
    st.known.assign(ts_.num_states(), false);
    st.known[index(ts_.init())] = true;
    return st;
}

std::vector<FrameworkOperation> Framework::applicable_operations(const FrameworkState& st) const {
    if (st.finished) {
        throw ContractViolation("framework run already finished");
    }
    std::vector<FrameworkOperation> ops;
    bool frontier = false;
    for (const Transition& t : ts_.transitions()) {
        if (st.known[index(t.origin)] && !st.known[index(t.target)]) {
            ops.emplace_back(op::GenUnknown{t});
            frontier = true;
        }
    }
    for (const Transition& t : ts_.transitions()) {
        if (st.known[index(t.origin)] && st.known[index(t.target)]) {
            ops.emplace_back(op::GenKnown{t});
        }
    }
    bool goal_known = false;
    for (std::size_t s = 0; s < ts_.num_states(); ++s) {
        if (st.known[s]) {
            ops.emplace_back(op::Refine{state_id(s)});
            goal_known = goal_known || ts_.is_goal(state_id(s));
        }
    }
    if (goal_known) {
        ops.emplace_back(op::DeclareSolvable{});
    } else if (!frontier) {
        ops.emplace_back(op::DeclareUnsolvable{});
    }
    return ops;
}

bool Framework::is_applicable(const FrameworkState& st, const FrameworkOperation& o) const {
    if (st.finished) {
        return false;
    }
    auto known = [&](StateId s) { return index(s) < st.known.size() && st.known[index(s)]; };
    auto goal_known = [&] {
        for (std::size_t s = 0; s < ts_.num_states(); ++s) {
            if (st.known[s] && ts_.is_goal(state_id(s))) {
                return true;
            }
        }
        return false;
    };
    return std::visit(Overloaded{
                          [&](const op::GenUnknown& g) {
                              return ts_.contains(g.t) && known(g.t.origin) && !known(g.t.target);
                          },
                          [&](const op::GenKnown& g) {
                              return ts_.contains(g.t) && known(g.t.origin) && known(g.t.target);
                          },
                          [&](const op::Refine& r) { return known(r.s); },
                          [&](const op::DeclareSolvable&) { return goal_known(); },
                          [&](const op::DeclareUnsolvable&) {
                              if (goal_known()) {
                                  return false;
                              }
                              return std::none_of(ts_.transitions().begin(), ts_.transitions().end(),
                                                  [&](const Transition& t) {
                                                      return known(t.origin) && !known(t.target);
                                                  });
                          },
                      },
                      o);
}

FrameworkState Framework::apply_operation(FrameworkState st, const FrameworkOperation& o) const {
    if (!is_applicable(st, o)) {
        throw ContractViolation("inapplicable operation " + operation_to_json(o, ts_).dump());
    }
    auto update_all = [&](const Transition& t) {
        for (std::size_t k = 0; k < sources_.size(); ++k) {
            st.infos[k] = sources_[k]->update(std::move(st.infos[k]), t);
        }
    };
    std::visit(Overloaded{
                   [&](const op::GenUnknown& g) {
                       update_all(g.t);
                       st.known[index(g.t.target)] = true;
                   },
                   [&](const op::GenKnown& g) { update_all(g.t); },
                   [&](const op::Refine& r) {
                       for (std::size_t k = 0; k < sources_.size(); ++k) {
                           st.infos[k] = sources_[k]->refine(std::move(st.infos[k]), r.s);
                       }
                   },
                   [&](const op::DeclareSolvable&) { st.finished = FrameworkResult::Solvable; },
                   [&](const op::DeclareUnsolvable&) { st.finished = FrameworkResult::Unsolvable; },
               },
               o);
    return st;
}

RandomPolicy::RandomPolicy(std::uint64_t seed, double initial, double decay)
    : rng_(seed), probability_(initial), decay_(decay) {}

FrameworkOperation RandomPolicy::choose(const FrameworkState&, std::span<const FrameworkOperation> applicable) {
    std::vector<const FrameworkOperation*> progress;
    std::vector<const FrameworkOperation*> stay;
    for (const auto& o : applicable) {
        (is_progress(o) ? progress : stay).push_back(&o);
    }
    const double p = probability_;
    probability_ *= decay_;
    std::bernoulli_distribution pick_stay(p);
    const bool use_stay = !stay.empty() && (progress.empty() || pick_stay(rng_));
    const auto& pool = use_stay ? stay : progress;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return *pool[pick(rng_)];
}

FrameworkOperation GenUnknownFirstPolicy::choose(const FrameworkState&,
                                                 std::span<const FrameworkOperation> applicable) {
    for (const auto& o : applicable) {
        if (std::holds_alternative<op::GenUnknown>(o)) {
            return o;
        }
    }
    for (const auto& o : applicable) {
        if (std::holds_alternative<op::DeclareSolvable>(o) || std::holds_alternative<op::DeclareUnsolvable>(o)) {
            return o;
        }
    }
    throw ContractViolation("no GenUnknown or Declare operation applicable");
}

ScriptedPolicy::ScriptedPolicy(std::vector<FrameworkOperation> script) : script_(std::move(script)) {
    if (script_.empty()) {
        throw std::invalid_argument("scripted policy needs at least one operation");
    }
}

FrameworkOperation ScriptedPolicy::choose(const FrameworkState&, std::span<const FrameworkOperation>) {
    const auto& o = script_[std::min(next_, script_.size() - 1)];
    ++next_;
    return o;
}

FrameworkRun run_policy(const Framework& fw, Policy& policy, std::size_t step_limit,
                        const FrameworkObserver& observer) {
    FrameworkRun run;
    FrameworkState st = fw.initial_state();
    for (std::size_t step = 0; step < step_limit && !st.finished; ++step) {
        const auto applicable = fw.applicable_operations(st);
        FrameworkOperation chosen = policy.choose(st, applicable);
        if (std::find(applicable.begin(), applicable.end(), chosen) == applicable.end()) {
            throw ContractViolation("policy chose inapplicable operation " +
                                    operation_to_json(chosen, fw.system()).dump());
        }
        st = fw.apply_operation(std::move(st), chosen);
        if (const auto* g = std::get_if<op::GenUnknown>(&chosen)) {
            run.events.emplace_back(g->t);
            ++run.gen_unknown_count;
        } else if (const auto* k = std::get_if<op::GenKnown>(&chosen)) {
            run.events.emplace_back(k->t);
        } else if (const auto* r = std::get_if<op::Refine>(&chosen)) {
            run.events.emplace_back(r->s);
        }
        run.operations.push_back(chosen);
        if (observer) {
            observer(st, chosen);
        }
    }
    run.result = st.finished.value_or(FrameworkResult::StepLimit);
    run.final_state = std::move(st);
    return run;
}

}  // namespace dynsearch
