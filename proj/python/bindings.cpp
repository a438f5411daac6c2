#include "dynsearch/dynastar.hpp"
#include "dynsearch/error.hpp"
#include "dynsearch/examples.hpp"
#include "dynsearch/json_io.hpp"
#include "dynsearch/oracle.hpp"
#include "dynsearch/properties.hpp"
#include "dynsearch/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dynsearch;

namespace {

// Values cross the boundary as JSON text; the Python side decodes them.
std::string table_json(const TransitionSystem& ts, const CostTable& table) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < ts.num_states(); ++i) {
        j[ts.state_name(state_id(i))] = cost_to_json(table[state_id(i)], ts);
    }
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_dynsearch, m) {
    // Translators registered later are tried first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<TransitionSystem>(m, "TransitionSystem")
        .def_property_readonly("num_states", &TransitionSystem::num_states)
        .def_property_readonly("num_transitions", &TransitionSystem::num_transitions)
        .def_property_readonly("states",
                               [](const TransitionSystem& ts) {
                                   std::vector<std::string> names;
                                   for (std::size_t i = 0; i < ts.num_states(); ++i) {
                                       names.push_back(ts.state_name(state_id(i)));
                                   }
                                   return names;
                               })
        .def_property_readonly("init", [](const TransitionSystem& ts) { return ts.state_name(ts.init()); })
        .def("serialize", [](const TransitionSystem& ts) { return serialize(ts); });

    m.def("parse", [](const std::string& text) { return parse(text); });
    m.def("parse_file", &parse_file);
    m.def("running_example", &running_example);
    m.def("reopening_example", &reopening_example);

    m.def("_gstar", [](const TransitionSystem& ts) { return table_json(ts, gstar_all(ts)); });
    m.def("_hstar", [](const TransitionSystem& ts) { return table_json(ts, hstar_all(ts)); });

    m.def(
        "_search",
        [](const TransitionSystem& ts, const std::string& heuristic, bool reeval, bool reopen, std::uint64_t seed) {
            const auto h = heuristic == "reopening" ? reopening_heuristic(ts) : heuristic_from_spec(heuristic, ts, seed);
            const SearchResult r = search(ts, *h, {.reeval = reeval, .reopen = reopen});
            nlohmann::json j = result_to_json(r, ts);
            j["optimal"] = assert_optimal(r, ts).holds;
            j["trace"] = write_trace(r.trace, ts);
            return j.dump();
        },
        py::arg("ts"), py::arg("heuristic"), py::arg("reeval"), py::arg("reopen"), py::arg("seed"));

    m.def(
        "_check_property",
        [](const TransitionSystem& ts, const std::string& heuristic, const std::string& property, std::size_t depth) {
            const auto h = heuristic == "reopening" ? reopening_heuristic(ts) : heuristic_from_spec(heuristic, ts);
            return check_property(ts, *h, parse_property(property), {depth, 200000}).to_json(ts).dump();
        },
        py::arg("ts"), py::arg("heuristic"), py::arg("property"), py::arg("depth"));
}
