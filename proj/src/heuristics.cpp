#include "dynsearch/heuristics.hpp"

#include "dynsearch/json_io.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dynsearch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b);
}

/// Uniform-ish pick from [lo, hi] (units) keyed by a hash.
Cost between(std::uint64_t key, Cost lo, Cost hi) {
    const auto span = static_cast<std::uint64_t>(hi.units() - lo.units()) + 1;
    return Cost::from_units(lo.units() + static_cast<Cost::Rep>(key % span));
}

class LandmarkSumHeuristic final : public DynamicHeuristic {
public:
    LandmarkSumHeuristic(std::shared_ptr<const LandmarkSource> source, std::vector<Cost> label_costs)
        : DynamicHeuristic(std::move(source)), label_costs_(std::move(label_costs)) {}

    std::string name() const override { return "hlm"; }

    Cost eval(StateId s, const Info& info) const override {
        const auto& entry = info.get<LandmarkMap>().at(s);
        Cost sum;
        if (entry) {
            for (std::size_t l = 0; l < entry->labels.size(); ++l) {
                if (entry->labels[l]) {
                    sum += label_costs_[l];
                }
            }
        }
        return sum;
    }

private:
    std::vector<Cost> label_costs_;
};

class LazyHeuristic final : public DynamicHeuristic {
public:
    LazyHeuristic(std::shared_ptr<const LazySource> source, CostTable cheap, CostTable accurate)
        : DynamicHeuristic(std::move(source)), cheap_(std::move(cheap)), accurate_(std::move(accurate)) {}

    std::string name() const override { return "lazy"; }

    Cost eval(StateId s, const Info& info) const override {
        return info.get<EvaluatorMap>().which.at(index(s)) == Evaluator::Cheap ? cheap_[s] : accurate_[s];
    }

private:
    CostTable cheap_;
    CostTable accurate_;
};

class StaticHeuristic final : public DynamicHeuristic {
public:
    StaticHeuristic(CostTable table, std::string name)
        : DynamicHeuristic(std::make_shared<const ConstantSource>()), table_(std::move(table)), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    Cost eval(StateId s, const Info&) const override { return table_[s]; }

private:
    CostTable table_;
    std::string name_;
};

/// Reads per-state values straight out of a StateValues information object.
class ValueTableHeuristic final : public DynamicHeuristic {
public:
    ValueTableHeuristic(SourcePtr source, std::string name)
        : DynamicHeuristic(std::move(source)), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    Cost eval(StateId s, const Info& info) const override { return info.get<StateValues>().values.at(index(s)); }

private:
    std::string name_;
};

class AdmissibleOnlySource final : public InformationSource {
public:
    AdmissibleOnlySource(CostTable hstar, std::uint64_t seed) : hstar_(std::move(hstar)), seed_(seed) {
        Cost max_finite;
        for (Cost c : hstar_.values) {
            if (c.is_finite()) {
                max_finite = std::max(max_finite, c);
            }
        }
        std::mt19937_64 rng(seed);
        for (Cost h : hstar_.values) {
            if (h.is_infinite()) {
                initial_.push_back(rng() % 2 == 0 ? kInfinity : between(rng(), Cost::zero(), max_finite));
            } else {
                initial_.push_back(between(rng(), Cost::zero(), h));
            }
        }
    }

    std::string name() const override { return "oracle-admissible"; }
    Info initial() const override { return Info::make(StateValues{initial_}); }
    Info update(Info info, const Transition&) const override { return info; }

    Info refine(Info info, StateId s) const override {
        const Cost current = info.get<StateValues>().values.at(index(s));
        const Cost bound = hstar_[s];
        if (current.is_infinite()) {
            return info;
        }
        const std::uint64_t key = mix(seed_, index(s), static_cast<std::uint64_t>(current.units()));
        Cost raised = current;
        if (bound.is_infinite()) {
            if (key % 4 == 0) {
                raised = kInfinity;
            }
        } else if (current < bound) {
            raised = between(key, current, bound);
        }
        if (raised != current) {
            info.mutate<StateValues>().values[index(s)] = raised;
        }
        return info;
    }

private:
    CostTable hstar_;
    std::uint64_t seed_;
    std::vector<Cost> initial_;
};

struct Slack {
    Cost amount;
    friend bool operator==(const Slack&, const Slack&) = default;
};

std::size_t info_hash(const Slack& s) {
    return static_cast<std::size_t>(s.amount.units());
}

nlohmann::json info_to_json(const Slack& s, const TransitionSystem& ts) {
    return {{"slack", cost_to_json(s.amount, ts)}};
}

class SlackSource final : public InformationSource {
public:
    SlackSource(Cost initial, std::uint64_t seed) : initial_(initial), seed_(seed) {
        if (initial.is_infinite()) {
            throw std::invalid_argument("slack must be finite");
        }
    }

    std::string name() const override { return "oracle-slack"; }
    Info initial() const override { return Info::make(Slack{initial_}); }
    Info update(Info info, const Transition&) const override { return info; }

    Info refine(Info info, StateId s) const override {
        const Cost current = info.get<Slack>().amount;
        if (current == Cost::zero()) {
            return info;
        }
        const std::uint64_t key = mix(seed_, index(s), static_cast<std::uint64_t>(current.units()));
        const Cost reduced = between(key, Cost::zero(), current);
        if (reduced != current) {
            info.mutate<Slack>().amount = reduced;
        }
        return info;
    }

private:
    Cost initial_;
    std::uint64_t seed_;
};

class SlackHeuristic final : public DynamicHeuristic {
public:
    SlackHeuristic(std::shared_ptr<const SlackSource> source, CostTable hstar)
        : DynamicHeuristic(std::move(source)), hstar_(std::move(hstar)) {}

    std::string name() const override { return "oracle-consistent"; }
    Cost eval(StateId s, const Info& info) const override {
        return subtract_clamped(hstar_[s], info.get<Slack>().amount);
    }

private:
    CostTable hstar_;
};

struct MaxTracked {
    Info inner;
    std::vector<Cost> best;
    friend bool operator==(const MaxTracked&, const MaxTracked&) = default;
};

std::size_t info_hash(const MaxTracked& m) {
    std::size_t h = m.inner.hash();
    for (Cost c : m.best) {
        h = hash_combine(h, c.is_infinite() ? ~std::size_t{0} : static_cast<std::size_t>(c.units()));
    }
    return h;
}

nlohmann::json info_to_json(const MaxTracked& m, const TransitionSystem& ts) {
    nlohmann::json best = nlohmann::json::object();
    for (std::size_t i = 0; i < m.best.size(); ++i) {
        best[ts.state_name(state_id(i))] = cost_to_json(m.best[i], ts);
    }
    return {{"inner", m.inner.to_json(ts)}, {"max", best}};
}

class MonotoneSource final : public InformationSource {
public:
    MonotoneSource(HeuristicPtr inner, std::size_t num_states) : inner_(std::move(inner)), num_states_(num_states) {}

    std::string name() const override { return "max(" + inner_->source()->name() + ")"; }

    Info initial() const override {
        MaxTracked m{inner_->source()->initial(), std::vector<Cost>(num_states_)};
        raise(m);
        return Info::make(std::move(m));
    }

    Info update(Info info, const Transition& t) const override {
        auto& m = info.mutate<MaxTracked>();
        m.inner = inner_->source()->update(std::move(m.inner), t);
        raise(m);
        return info;
    }

    Info refine(Info info, StateId s) const override {
        auto& m = info.mutate<MaxTracked>();
        m.inner = inner_->source()->refine(std::move(m.inner), s);
        raise(m);
        return info;
    }

    bool defined_at(const Info& info, StateId s) const override {
        return inner_->source()->defined_at(info.get<MaxTracked>().inner, s);
    }

private:
    void raise(MaxTracked& m) const {
        for (std::size_t s = 0; s < num_states_; ++s) {
            m.best[s] = std::max(m.best[s], inner_->eval(state_id(s), m.inner));
        }
    }

    HeuristicPtr inner_;
    std::size_t num_states_;
};

class MonotoneHeuristic final : public DynamicHeuristic {
public:
    MonotoneHeuristic(std::shared_ptr<const MonotoneSource> source, HeuristicPtr inner)
        : DynamicHeuristic(std::move(source)), inner_(std::move(inner)) {}

    std::string name() const override { return "max(" + inner_->name() + ")"; }

    Cost eval(StateId s, const Info& info) const override {
        const auto& m = info.get<MaxTracked>();
        return std::max(inner_->eval(s, m.inner), m.best.at(index(s)));
    }

private:
    HeuristicPtr inner_;
};

std::vector<Cost> label_costs(const TransitionSystem& ts) {
    std::vector<Cost> costs;
    for (std::size_t l = 0; l < ts.num_labels(); ++l) {
        costs.push_back(ts.label_cost(label_id(l)));
    }
    return costs;
}

void require_total(const TransitionSystem& ts, const CostTable& table, const char* what) {
    if (table.size() != ts.num_states()) {
        throw std::invalid_argument(std::string(what) + " table does not cover every state");
    }
}

}  // namespace

HeuristicPtr hlm(const TransitionSystem& ts) {
    return hlm(ts, compute_label_landmarks(ts, ts.init()));
}

HeuristicPtr hlm(const TransitionSystem& ts, LandmarkSet initial_landmarks) {
    return std::make_shared<const LandmarkSumHeuristic>(landmark_source(ts, std::move(initial_landmarks)),
                                                        label_costs(ts));
}

HeuristicPtr lazy_heuristic(CostTable cheap, CostTable accurate, const TransitionSystem& ts) {
    require_total(ts, cheap, "cheap");
    require_total(ts, accurate, "accurate");
    return std::make_shared<const LazyHeuristic>(lazy_source(ts), std::move(cheap), std::move(accurate));
}

HeuristicPtr static_adapter(CostTable table, std::string name) {
    return std::make_shared<const StaticHeuristic>(std::move(table), std::move(name));
}

HeuristicPtr scripted_heuristic(ScriptedSpec spec) {
    return std::make_shared<const ValueTableHeuristic>(scripted_source(std::move(spec)), "scripted");
}

HeuristicPtr oracle_family(const TransitionSystem& ts, OracleFlavor flavor, std::uint64_t seed) {
    CostTable hstar = hstar_all(ts);
    if (flavor == OracleFlavor::AdmissibleOnly) {
        auto source = std::make_shared<const AdmissibleOnlySource>(std::move(hstar), seed);
        return std::make_shared<const ValueTableHeuristic>(std::move(source), "oracle-admissible");
    }
    Cost max_finite;
    for (Cost c : hstar.values) {
        if (c.is_finite()) {
            max_finite = std::max(max_finite, c);
        }
    }
    std::mt19937_64 rng(seed);
    return consistent_monotone(ts, between(rng(), Cost::zero(), max_finite), seed);
}

HeuristicPtr consistent_monotone(const TransitionSystem& ts, Cost initial_slack, std::uint64_t seed) {
    return std::make_shared<const SlackHeuristic>(std::make_shared<const SlackSource>(initial_slack, seed),
                                                  hstar_all(ts));
}

HeuristicPtr monotonic_wrap(const TransitionSystem& ts, HeuristicPtr inner) {
    auto source = std::make_shared<const MonotoneSource>(inner, ts.num_states());
    return std::make_shared<const MonotoneHeuristic>(std::move(source), std::move(inner));
}

CostTable blind_goal_table(const TransitionSystem& ts) {
    Cost min_label = kInfinity;
    for (std::size_t l = 0; l < ts.num_labels(); ++l) {
        min_label = std::min(min_label, ts.label_cost(label_id(l)));
    }
    CostTable table;
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        table.values.push_back(ts.is_goal(state_id(s)) ? Cost::zero() : min_label);
    }
    return table;
}

CostTable halved_table(const CostTable& table) {
    CostTable out;
    for (Cost c : table.values) {
        out.values.push_back(c.is_infinite() ? c : Cost::from_units(c.units() / 2));
    }
    return out;
}

CostTable parse_heuristic_table(const TransitionSystem& ts, std::string_view text) {
    std::vector<std::optional<Cost>> values(ts.num_states());
    auto assign = [&](const std::string& state, const std::string& literal) {
        auto s = ts.find_state(state);
        if (!s) {
            throw ParseError("unknown state '" + state + "' in heuristic table", 0, 0);
        }
        try {
            values[index(*s)] = parse_cost(literal, ts.cost_scale());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("heuristic table: ") + e.what(), 0, 0);
        }
    };
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("heuristic table: ") + e.what(), 0, 0);
        }
        for (const auto& [name, value] : doc.items()) {
            assign(name, value.is_string() ? value.get<std::string>() : value.dump());
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = line.substr(0, line.find('#'));
            std::istringstream fields(line);
            std::string state;
            std::string literal;
            std::string extra;
            if (!(fields >> state)) {
                continue;
            }
            if (!(fields >> literal) || (fields >> extra)) {
                throw ParseError("expected '<state> <cost>'", line_no, 1);
            }
            assign(state, literal);
        }
    }
    CostTable table;
    for (std::size_t s = 0; s < values.size(); ++s) {
        if (!values[s]) {
            throw ParseError("heuristic table has no value for state '" + ts.state_name(state_id(s)) + "'", 0, 0);
        }
        table.values.push_back(*values[s]);
    }
    return table;
}

bool table_admissible(const TransitionSystem& ts, const CostTable& table) {
    const CostTable hstar = hstar_all(ts);
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        if (table.values[s] > hstar.values[s]) {
            return false;
        }
    }
    return true;
}

bool table_consistent(const TransitionSystem& ts, const CostTable& table) {
    return std::all_of(ts.transitions().begin(), ts.transitions().end(), [&](const Transition& t) {
        return table[t.origin] <= ts.cost(t) + table[t.target];
    });
}

HeuristicPtr heuristic_from_spec(std::string_view spec, const TransitionSystem& ts, std::uint64_t seed) {
    auto table_file = [&](const std::string& path) { return parse_heuristic_table(ts, read_text_file(path)); };
    const auto colon = spec.find(':');
    const std::string kind(spec.substr(0, colon));
    const std::string arg = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
    if (colon != std::string_view::npos && arg.empty()) {
        throw std::invalid_argument("heuristic spec '" + std::string(spec) + "' needs an argument");
    }
    if (kind == "max" && !arg.empty()) {
        return monotonic_wrap(ts, heuristic_from_spec(arg, ts, seed));
    }
    if (kind == "static" && !arg.empty()) {
        return static_adapter(table_file(arg), "static");
    }
    if (kind == "scripted" && !arg.empty()) {
        return scripted_heuristic(parse_triggers(ts, read_text_file(arg)));
    }
    if (kind == "lazy" && !arg.empty()) {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("lazy heuristic spec needs two table files: lazy:<cheap>,<accurate>");
        }
        return lazy_heuristic(table_file(arg.substr(0, comma)), table_file(arg.substr(comma + 1)), ts);
    }
    if (!arg.empty()) {
        throw std::invalid_argument("unknown heuristic spec '" + std::string(spec) + "'");
    }
    if (kind == "zero") {
        return static_adapter(CostTable{std::vector<Cost>(ts.num_states())}, "zero");
    }
    if (kind == "blind") {
        return static_adapter(blind_goal_table(ts), "blind");
    }
    if (kind == "hstar") {
        return static_adapter(hstar_all(ts), "hstar");
    }
    if (kind == "half-hstar") {
        return static_adapter(halved_table(hstar_all(ts)), "half-hstar");
    }
    if (kind == "hlm") {
        return hlm(ts);
    }
    if (kind == "lazy-half") {
        const CostTable hstar = hstar_all(ts);
        return lazy_heuristic(halved_table(hstar), hstar, ts);
    }
    if (kind == "oracle-admissible") {
        return oracle_family(ts, OracleFlavor::AdmissibleOnly, seed);
    }
    if (kind == "oracle-consistent") {
        return oracle_family(ts, OracleFlavor::ConsistentMonotone, seed);
    }
    throw std::invalid_argument("unknown heuristic spec '" + std::string(spec) + "'");
}

}  // namespace dynsearch
