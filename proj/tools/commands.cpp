#include "commands.hpp"

#include "dynsearch/examples.hpp"
#include "dynsearch/framework.hpp"
#include "dynsearch/json_io.hpp"
#include "dynsearch/oracle.hpp"
#include "dynsearch/properties.hpp"
#include "dynsearch/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace dynsearch::cli {

namespace {

struct Globals {
    bool json = false;
    bool quiet = false;
    std::uint64_t seed = 0;
};

class Printer {
public:
    Printer(std::ostream& out, const Globals& g) : out_(out), g_(g) {}

    template <class T>
    Printer& operator<<(const T& value) {
        if (!g_.quiet) {
            out_ << value;
        }
        return *this;
    }

private:
    std::ostream& out_;
    const Globals& g_;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot write '" + path + "'");
    }
    file << content;
    if (!file) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string describe_path(const Path& path, const TransitionSystem& ts) {
    if (path.empty()) {
        return ts.state_name(ts.init());
    }
    std::string out = ts.state_name(path.front().origin);
    for (const auto& t : path) {
        out += " -" + ts.label_name(t.label) + "-> " + ts.state_name(t.target);
    }
    return out;
}

nlohmann::json table_json(const CostTable& table, const TransitionSystem& ts) {
    nlohmann::ordered_json out;
    for (std::size_t s = 0; s < ts.num_states(); ++s) {
        out[ts.state_name(state_id(s))] = cost_to_json(table.values[s], ts);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct ParseOpts {
    std::string file;
    bool canonical = false;
};

int cmd_parse(const ParseOpts& o, const Globals&, Printer& out) {
    const TransitionSystem ts = parse_file(o.file);
    if (o.canonical) {
        out << serialize(ts);
        return kExitOk;
    }
    nlohmann::ordered_json j;
    j["states"] = ts.num_states();
    j["labels"] = ts.num_labels();
    j["transitions"] = ts.num_transitions();
    j["init"] = ts.state_name(ts.init());
    j["goals"] = nlohmann::json::array();
    for (StateId g : ts.goals()) {
        j["goals"].push_back(ts.state_name(g));
    }
    j["cost_scale"] = ts.cost_scale();
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct GenerateOpts {
    std::size_t states = 8;
    std::size_t transitions = 16;
    std::int64_t max_cost = 9;
    std::size_t goals = 1;
    bool solvable = false;
    std::string output;
};

int cmd_generate(const GenerateOpts& o, const Globals& g, Printer& out) {
    GeneratorParams params;
    params.n_states = o.states;
    params.n_transitions = o.transitions;
    params.max_cost = Cost::from_units(o.max_cost);
    params.n_goals = o.goals;
    params.solvable_only = o.solvable;
    params.seed = g.seed;
    const std::string text = serialize(generate_random(params));
    if (o.output.empty()) {
        out << text;
    } else {
        write_file(o.output, text);
    }
    return kExitOk;
}

struct FileOpts {
    std::string file;
};

int cmd_oracle(const FileOpts& o, const Globals&, Printer& out) {
    const TransitionSystem ts = parse_file(o.file);
    nlohmann::ordered_json j;
    j["gstar"] = table_json(gstar_all(ts), ts);
    j["hstar"] = table_json(hstar_all(ts), ts);
    j["optimal"] = cost_to_json(optimal_solution_cost(ts), ts);
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct CheckOpts {
    std::string file;
    std::string property = "dyn-admissible";
    std::string heuristic = "hlm";
    std::size_t depth = 0;
    std::size_t cap = 200000;
};

int cmd_check(const CheckOpts& o, const Globals& g, Printer& out) {
    const TransitionSystem ts = parse_file(o.file);
    const Property property = parse_property(o.property);
    const auto h = heuristic_from_spec(o.heuristic, ts, g.seed);
    const PropertyVerdict verdict = check_property(ts, *h, property, {o.depth, o.cap});
    nlohmann::json j = verdict.to_json(ts);
    j["heuristic"] = o.heuristic;
    out << j.dump(2) << "\n";
    return verdict.holds == Holds::No ? kExitNegative : kExitOk;
}

struct FrameworkOpts {
    std::string file;
    std::string policy = "random";
    std::string heuristic = "hlm";
    std::size_t steps = 10000;
};

int cmd_framework(const FrameworkOpts& o, const Globals& g, Printer& out) {
    const TransitionSystem ts = parse_file(o.file);
    const auto h = heuristic_from_spec(o.heuristic, ts, g.seed);
    const Framework fw(ts, {parent_source(ts), h->source()});
    std::unique_ptr<Policy> policy;
    if (o.policy == "random") {
        policy = std::make_unique<RandomPolicy>(g.seed);
    } else if (o.policy == "gen-unknown-first") {
        policy = std::make_unique<GenUnknownFirstPolicy>();
    } else {
        throw CLI::ValidationError("--policy", "unknown policy '" + o.policy + "'");
    }
    const FrameworkRun run = run_policy(fw, *policy, o.steps);
    for (const auto& op : run.operations) {
        out << operation_to_json(op, ts).dump() << "\n";
    }
    out << nlohmann::json{{"result", to_string(run.result)},
                          {"operations", run.operations.size()},
                          {"gen_unknown", run.gen_unknown_count}}
                   .dump()
        << "\n";
    switch (run.result) {
    case FrameworkResult::Solvable:
        return kExitOk;
    case FrameworkResult::Unsolvable:
        return kExitNegative;
    case FrameworkResult::StepLimit:
        return kExitError;
    }
    return kExitError;
}

struct AstarOpts {
    std::string file;
    std::string heuristic = "hlm";
    bool reeval = false;
    bool no_reopen = false;
    std::uint64_t step_limit = 1'000'000;
    std::string trace;
};

int cmd_astar(const AstarOpts& o, const Globals& g, Printer& out) {
    const TransitionSystem ts = parse_file(o.file);
    const auto h = heuristic_from_spec(o.heuristic, ts, g.seed);
    SearchConfig config;
    config.reeval = o.reeval;
    config.reopen = !o.no_reopen;
    config.step_limit = o.step_limit;
    config.record_trace = !o.trace.empty();
    const SearchResult result = search(ts, *h, config);
    if (!o.trace.empty()) {
        write_file(o.trace, write_trace(result.trace, ts));
    }
    if (g.json) {
        nlohmann::json j = result_to_json(result, ts);
        j["heuristic"] = o.heuristic;
        j["reeval"] = o.reeval;
        j["reopen"] = !o.no_reopen;
        out << j.dump(2) << "\n";
    } else {
        out << to_string(result.outcome);
        if (result.outcome == Outcome::Solution) {
            out << " cost " << format_cost(result.cost, ts.cost_scale()) << ": " << describe_path(result.path, ts);
        }
        out << "\n";
        out << "expansions " << result.stats.expansions << ", reopenings " << result.stats.reopenings
            << ", reevaluations " << result.stats.reevaluations << "\n";
        if (!result.conforming) {
            out << "note: reopening disabled, result may be suboptimal\n";
        }
    }
    switch (result.outcome) {
    case Outcome::Solution:
        return kExitOk;
    case Outcome::Unsolvable:
        return kExitNegative;
    case Outcome::StepLimit:
        return kExitError;
    }
    return kExitError;
}

struct VerifyOpts {
    std::string trace;
    std::string ts;
    std::string check = "all";
};

int cmd_verify(const VerifyOpts& o, const Globals&, Printer& out) {
    const TransitionSystem ts = parse_file(o.ts);
    const Trace trace = read_trace(read_text_file(o.trace), ts);
    std::vector<TheoremReport> reports;
    const bool all = o.check == "all";
    if (all || o.check == "optimal") {
        reports.push_back(assert_optimal(result_from_trace(trace), ts));
    }
    if (all || o.check == "f-mono") {
        reports.push_back(popped_f_nondecreasing(trace, ts));
    }
    if (all || o.check == "reopen") {
        TheoremReport r = no_reopening(trace, ts);
        r.context = "reopenings: " + std::to_string(reopen_count(trace));
        reports.push_back(r);
    }
    if (all || o.check == "optex") {
        reports.push_back(optex(trace, ts));
    }
    nlohmann::json j = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : reports) {
        j.push_back(r.to_json());
        ok = ok && r.holds;
    }
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitNegative;
}

struct SuiteOpts {
    std::size_t seeds = 100;
    InstanceShape shape;
};

int cmd_suite(const SuiteOpts& o, const Globals& g, Printer& out) {
    BatteryConfig config;
    config.seeds = o.seeds;
    config.base_seed = g.seed;
    config.shape = o.shape;
    const BatteryReport report = theorem_battery(config);
    if (g.json) {
        out << report.to_json().dump(2) << "\n";
    } else {
        for (const auto& c : report.checks) {
            out << (c.failures.empty() ? "PASS " : "FAIL ") << c.name << " (" << c.runs << " runs, "
                << c.failures.size() << " failures)\n";
            for (std::size_t k = 0; k < std::min<std::size_t>(5, c.failures.size()); ++k) {
                out << "  " << c.failures[k] << "\n";
            }
        }
    }
    return report.all_passed() ? kExitOk : kExitNegative;
}

struct Golden {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Golden> golden_checks() {
    std::vector<Golden> checks;
    const TransitionSystem running = running_example();
    {
        const auto result = search(running, *hlm(running), {});
        const bool ok = result.outcome == Outcome::Solution && result.cost == Cost::from_units(3) &&
                        optimal_solution_cost(running) == Cost::from_units(3);
        checks.push_back({"running example, hlm: cost 3", ok,
                          "got " + to_string(result.outcome) + " " + format_cost(result.cost)});
    }
    const TransitionSystem reopening = reopening_example();
    const auto h = reopening_heuristic(reopening);
    auto order = [&](const Trace& trace) {
        std::string s;
        for (StateId id : expansion_order(trace)) {
            s += reopening.state_name(id);
        }
        return s;
    };
    {
        const auto result = search(reopening, *h, {.reeval = false, .reopen = true});
        const bool ok = result.outcome == Outcome::Solution && result.cost == Cost::from_units(7) &&
                        order(result.trace) == "ABCDEDF" && reopen_count(result.trace) == 1;
        checks.push_back({"reopening example, no reeval: cost 7, one reopening", ok,
                          "got cost " + format_cost(result.cost) + ", expansions " + order(result.trace) +
                              ", reopenings " + std::to_string(reopen_count(result.trace))});
    }
    {
        const auto result = search(reopening, *h, {.reeval = false, .reopen = false});
        const bool ok = result.outcome == Outcome::Solution && result.cost == Cost::from_units(8) &&
                        result.path.size() == 1 && reopening.state_name(result.path[0].target) == "F";
        checks.push_back({"reopening example, no reeval, no reopening: cost 8", ok,
                          "got cost " + format_cost(result.cost) + " via " + describe_path(result.path, reopening)});
    }
    {
        const auto result = search(reopening, *h, {.reeval = true});
        const bool ok = result.outcome == Outcome::Solution && result.cost == Cost::from_units(7) &&
                        reopen_count(result.trace) == 0;
        checks.push_back({"reopening example, reeval: cost 7, no reopening", ok,
                          "got cost " + format_cost(result.cost) + ", reopenings " +
                              std::to_string(reopen_count(result.trace))});
    }
    return checks;
}

int cmd_golden_examples(const Globals& g, Printer& out) {
    const auto checks = golden_checks();
    bool ok = true;
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : checks) {
        ok = ok && c.passed;
        if (g.json) {
            j.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        } else {
            out << (c.passed ? "PASS " : "FAIL ") << c.name;
            if (!c.passed) {
                out << " (" << c.detail << ")";
            }
            out << "\n";
        }
    }
    if (g.json) {
        out << j.dump(2) << "\n";
    }
    return ok ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic-heuristic search: dynA*, the generic framework, and theorem checks"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--quiet", g.quiet, "Suppress normal output");
    app.add_option("--seed", g.seed, "Random seed");

    std::function<int(Printer&)> action;

    ParseOpts parse_o;
    auto* parse_cmd = app.add_subcommand("parse", "Validate a transition system file");
    parse_cmd->add_option("file", parse_o.file)->required();
    parse_cmd->add_flag("--canonical", parse_o.canonical, "Print the canonical text form");
    parse_cmd->callback([&] { action = [&](Printer& p) { return cmd_parse(parse_o, g, p); }; });

    GenerateOpts gen_o;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a random transition system");
    gen_cmd->add_option("--states", gen_o.states)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--transitions", gen_o.transitions);
    gen_cmd->add_option("--max-cost", gen_o.max_cost)->check(CLI::Range(1, 1000));
    gen_cmd->add_option("--goals", gen_o.goals);
    gen_cmd->add_flag("--solvable", gen_o.solvable, "Resample until a goal is reachable");
    gen_cmd->add_option("-o,--output", gen_o.output);
    gen_cmd->callback([&] { action = [&](Printer& p) { return cmd_generate(gen_o, g, p); }; });

    FileOpts oracle_o;
    auto* oracle_cmd = app.add_subcommand("oracle", "Print g* and h* tables");
    oracle_cmd->add_option("file", oracle_o.file)->required();
    oracle_cmd->callback([&] { action = [&](Printer& p) { return cmd_oracle(oracle_o, g, p); }; });

    CheckOpts check_o;
    auto* check_cmd = app.add_subcommand("check", "Check a dyn-property over reachable information");
    check_cmd->add_option("file", check_o.file)->required();
    check_cmd->add_option("--property", check_o.property);
    check_cmd->add_option("--heuristic", check_o.heuristic);
    check_cmd->add_option("--depth", check_o.depth, "Event depth bound (0: |T| + |S|)");
    check_cmd->add_option("--cap", check_o.cap, "Maximum number of enumerated nodes");
    check_cmd->callback([&] { action = [&](Printer& p) { return cmd_check(check_o, g, p); }; });

    FrameworkOpts fw_o;
    auto* fw_cmd = app.add_subcommand("framework", "Run the generic search framework with a policy");
    fw_cmd->add_option("file", fw_o.file)->required();
    fw_cmd->add_option("--policy", fw_o.policy, "random | gen-unknown-first");
    fw_cmd->add_option("--heuristic", fw_o.heuristic, "Heuristic whose source takes part");
    fw_cmd->add_option("--steps", fw_o.steps, "Operation limit");
    fw_cmd->callback([&] { action = [&](Printer& p) { return cmd_framework(fw_o, g, p); }; });

    AstarOpts astar_o;
    auto* astar_cmd = app.add_subcommand("astar", "Run dynA*");
    astar_cmd->add_option("file", astar_o.file)->required();
    astar_cmd->add_option("--heuristic", astar_o.heuristic);
    astar_cmd->add_flag("--reeval", astar_o.reeval, "Re-evaluate popped states");
    astar_cmd->add_flag("--no-reopen", astar_o.no_reopen, "Do not reopen closed states (non-conforming)");
    astar_cmd->add_option("--step-limit", astar_o.step_limit, "Maximum number of pops");
    astar_cmd->add_option("--trace", astar_o.trace, "Write the event trace as JSON lines");
    astar_cmd->callback([&] { action = [&](Printer& p) { return cmd_astar(astar_o, g, p); }; });

    VerifyOpts verify_o;
    auto* verify_cmd = app.add_subcommand("verify", "Check a recorded trace");
    verify_cmd->add_option("--trace", verify_o.trace)->required();
    verify_cmd->add_option("--ts", verify_o.ts)->required();
    verify_cmd->add_option("--check", verify_o.check)
        ->check(CLI::IsMember({"all", "optimal", "f-mono", "reopen", "optex"}));
    verify_cmd->callback([&] { action = [&](Printer& p) { return cmd_verify(verify_o, g, p); }; });

    SuiteOpts suite_o;
    auto* suite_cmd = app.add_subcommand("suite", "Randomized theorem battery");
    suite_cmd->add_option("--seeds", suite_o.seeds);
    suite_cmd->add_option("--states", suite_o.shape.max_states)->check(CLI::Range(2, 1000));
    suite_cmd->add_option("--transitions", suite_o.shape.max_transitions);
    suite_cmd->add_option("--max-cost", suite_o.shape.max_cost)->check(CLI::Range(1, 1000));
    suite_cmd->callback([&] { action = [&](Printer& p) { return cmd_suite(suite_o, g, p); }; });

    auto* golden_cmd = app.add_subcommand("paper-examples", "Golden checks on the built-in examples");
    golden_cmd->callback([&] { action = [&](Printer& p) { return cmd_golden_examples(g, p); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Printer printer(out, g);
    try {
        return action(printer);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace dynsearch::cli
