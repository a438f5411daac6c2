#include "dynsearch/error.hpp"
#include "dynsearch/transition_system.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dynsearch {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) {
                ++i;
            }
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') {
                ++i;
            }
            if (i > start) {
                tokens.push_back({std::string(raw.substr(start, i - start)), line, start + 1});
            }
        }
        if (!tokens.empty()) {
            lines.push_back(std::move(tokens));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
        ++line;
    }
    return lines;
}

[[noreturn]] void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column);
}

std::int64_t scale_for(int places, std::size_t line, std::size_t column) {
    if (places > 9) {
        throw ParseError("cost has more than 9 decimal places", line, column);
    }
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    return scale;
}

/// Checks name references and reports the first unknown one at its position.
void check_references(const SystemDescription& d, const std::vector<std::pair<std::string, Token>>& state_refs,
                      const std::vector<std::pair<std::string, Token>>& label_refs) {
    std::unordered_map<std::string, bool> states;
    for (const auto& s : d.states) {
        states.emplace(s, true);
    }
    std::unordered_map<std::string, bool> labels;
    for (const auto& [l, c] : d.labels) {
        labels.emplace(l, true);
    }
    for (const auto& [name, at] : state_refs) {
        if (!states.contains(name)) {
            fail("unknown state '" + name + "'", at);
        }
    }
    for (const auto& [name, at] : label_refs) {
        if (!labels.contains(name)) {
            fail("unknown label '" + name + "'", at);
        }
    }
}

SystemDescription parse_text(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) {
        throw ParseError("empty document, expected 'ts-format 1'", 1, 1);
    }
    const auto& header = lines.front();
    if (header[0].text != "ts-format") {
        fail("expected 'ts-format 1' header", header[0]);
    }
    if (header.size() != 2 || header[1].text != "1") {
        fail("unsupported format version", header.size() > 1 ? header[1] : header[0]);
    }

    // Label costs determine the decimal scale, so they are read first.
    int places = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tokens = lines[i];
        if (tokens[0].text == "label") {
            if (tokens.size() != 3) {
                fail("expected 'label <name> <cost>'", tokens[0]);
            }
            places = std::max(places, decimal_places(tokens[2].text));
        }
    }

    SystemDescription d;
    d.cost_scale = scale_for(places, 0, 0);
    std::vector<std::pair<std::string, Token>> state_refs;
    std::vector<std::pair<std::string, Token>> label_refs;
    std::unordered_map<std::string, Token> declared_states;
    std::unordered_map<std::string, Token> declared_labels;
    std::set<std::array<std::string, 3>> seen_transitions;
    std::optional<Token> init_at;
    bool saw_goal = false;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tokens = lines[i];
        const std::string& kw = tokens[0].text;
        if (kw == "label") {
            const Token& name = tokens[1];
            if (!declared_labels.emplace(name.text, name).second) {
                fail("duplicate label '" + name.text + "'", name);
            }
            Cost cost;
            try {
                cost = parse_cost(tokens[2].text, d.cost_scale);
            } catch (const std::invalid_argument& e) {
                fail(e.what(), tokens[2]);
            }
            if (cost.is_infinite()) {
                fail("label cost must be finite", tokens[2]);
            }
            d.labels.emplace_back(name.text, cost);
        } else if (kw == "state") {
            if (tokens.size() < 2) {
                fail("expected 'state <name>...'", tokens[0]);
            }
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                if (!declared_states.emplace(tokens[k].text, tokens[k]).second) {
                    fail("duplicate state '" + tokens[k].text + "'", tokens[k]);
                }
                d.states.push_back(tokens[k].text);
            }
        } else if (kw == "init") {
            if (tokens.size() != 2) {
                fail("expected 'init <name>'", tokens[0]);
            }
            if (init_at) {
                fail("initial state declared twice", tokens[0]);
            }
            init_at = tokens[1];
            d.init = tokens[1].text;
            state_refs.emplace_back(tokens[1].text, tokens[1]);
        } else if (kw == "goal") {
            // A bare `goal` line declares an explicitly empty goal set.
            saw_goal = true;
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                if (std::find(d.goals.begin(), d.goals.end(), tokens[k].text) != d.goals.end()) {
                    fail("duplicate goal '" + tokens[k].text + "'", tokens[k]);
                }
                d.goals.push_back(tokens[k].text);
                state_refs.emplace_back(tokens[k].text, tokens[k]);
            }
        } else if (kw == "trans") {
            if (tokens.size() != 4) {
                fail("expected 'trans <origin> <label> <target>'", tokens[0]);
            }
            std::array<std::string, 3> triple{tokens[1].text, tokens[2].text, tokens[3].text};
            if (!seen_transitions.insert(triple).second) {
                fail("duplicate transition", tokens[0]);
            }
            state_refs.emplace_back(tokens[1].text, tokens[1]);
            label_refs.emplace_back(tokens[2].text, tokens[2]);
            state_refs.emplace_back(tokens[3].text, tokens[3]);
            d.transitions.push_back(std::move(triple));
        } else if (kw == "ts-format") {
            fail("repeated header", tokens[0]);
        } else {
            fail("unknown directive '" + kw + "'", tokens[0]);
        }
    }

    const Token& last = lines.back().back();
    if (!init_at) {
        throw ParseError("missing 'init' line", last.line, 0);
    }
    if (!saw_goal) {
        throw ParseError("missing 'goal' line", last.line, 0);
    }
    check_references(d, state_refs, label_refs);
    return d;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::string expect_string(const nlohmann::ordered_json& j, const std::string& what) {
    if (!j.is_string()) {
        throw ParseError(what + " must be a string", 0, 0);
    }
    return j.get<std::string>();
}

SystemDescription parse_json(std::string_view text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("JSON syntax error", line, column);
    }
    if (!doc.is_object()) {
        throw ParseError("expected a JSON object", 1, 1);
    }
    for (const char* key : {"labels", "states", "init", "goals", "transitions"}) {
        if (!doc.contains(key)) {
            throw ParseError(std::string("missing key '") + key + "'", 0, 0);
        }
    }
    const auto& labels = doc["labels"];
    if (!labels.is_object()) {
        throw ParseError("'labels' must map names to costs", 0, 0);
    }
    std::vector<std::pair<std::string, std::string>> literals;
    int places = 0;
    for (const auto& [name, value] : labels.items()) {
        std::string literal;
        if (value.is_number_unsigned() || value.is_number_integer() || value.is_number_float()) {
            literal = value.dump();
        } else if (value.is_string()) {
            literal = value.get<std::string>();
        } else {
            throw ParseError("cost of label '" + name + "' must be a number", 0, 0);
        }
        places = std::max(places, decimal_places(literal));
        literals.emplace_back(name, literal);
    }

    SystemDescription d;
    d.cost_scale = scale_for(places, 0, 0);
    for (const auto& [name, literal] : literals) {
        Cost cost;
        try {
            cost = parse_cost(literal, d.cost_scale);
        } catch (const std::invalid_argument& e) {
            throw ParseError("label '" + name + "': " + e.what(), 0, 0);
        }
        if (cost.is_infinite()) {
            throw ParseError("label '" + name + "' must have finite cost", 0, 0);
        }
        d.labels.emplace_back(name, cost);
    }
    if (!doc["states"].is_array() || !doc["goals"].is_array() || !doc["transitions"].is_array()) {
        throw ParseError("'states', 'goals' and 'transitions' must be arrays", 0, 0);
    }
    for (const auto& s : doc["states"]) {
        d.states.push_back(expect_string(s, "state name"));
    }
    d.init = expect_string(doc["init"], "'init'");
    for (const auto& g : doc["goals"]) {
        d.goals.push_back(expect_string(g, "goal"));
    }
    for (const auto& t : doc["transitions"]) {
        if (!t.is_array() || t.size() != 3) {
            throw ParseError("transition must be [origin, label, target]", 0, 0);
        }
        d.transitions.push_back({expect_string(t[0], "origin"), expect_string(t[1], "label"),
                                 expect_string(t[2], "target")});
    }
    auto violations = validate(d);
    if (!violations.empty()) {
        throw ParseError(violations.front(), 0, 0);
    }
    return d;
}

}  // namespace

SystemDescription parse_description(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return parse_json(text);
    }
    return parse_text(text);
}

TransitionSystem parse(std::string_view text) {
    return TransitionSystem::from_description(parse_description(text));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read '" + path + "'");
    }
    return buffer.str();
}

TransitionSystem parse_file(const std::string& path) {
    return parse(read_text_file(path));
}

std::string serialize(const TransitionSystem& ts) {
    std::string out = "ts-format 1\n";
    for (std::size_t i = 0; i < ts.num_labels(); ++i) {
        LabelId l = label_id(i);
        out += "label " + ts.label_name(l) + " " + format_cost(ts.label_cost(l), ts.cost_scale()) + "\n";
    }
    out += "state";
    for (std::size_t i = 0; i < ts.num_states(); ++i) {
        out += " " + ts.state_name(state_id(i));
    }
    out += "\ninit " + ts.state_name(ts.init()) + "\ngoal";
    for (StateId g : ts.goals()) {
        out += " " + ts.state_name(g);
    }
    out += "\n";
    for (const Transition& t : ts.transitions()) {
        out += "trans " + ts.state_name(t.origin) + " " + ts.label_name(t.label) + " " + ts.state_name(t.target) +
               "\n";
    }
    return out;
}

}  // namespace dynsearch
