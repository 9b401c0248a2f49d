#include "revccs/encodings.hpp"
#include "revccs/equivalences.hpp"
#include "revccs/rccs.hpp"
#include "revccs/serialize.hpp"
#include "revccs/syntax.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace revccs;

namespace {

CcsProcess parse(const std::string &text, bool unguarded) {
    ParseOptions o;
    o.allow_unguarded_choice = unguarded;
    return parse_ccs(text, o);
}

py::dict check_pair(const std::string &relation, const std::string &p1, const std::string &p2,
                    bool weak, std::size_t state_cap) {
    auto r = parse_relation(relation);
    if (!r) throw py::value_error("unknown relation " + relation);
    CheckOptions o;
    o.weak = weak;
    o.state_cap = state_cap;
    bool unguarded = is_structure_relation(*r);
    auto res = check(*r, parse(p1, unguarded), parse(p2, unguarded), o);
    py::dict d;
    d["relation"] = relation_name(res.relation);
    d["weak"] = res.weak;
    d["holds"] = res.holds;
    d["nodes"] = res.nodes;
    d["witness_size"] = res.witness.size();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reversible CCS semantics, encodings and bisimulation checks";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<IncoherentMemoryError>(m, "IncoherentMemoryError", PyExc_ValueError);

    m.def("pretty", [](const std::string &t, bool unguarded) { return pretty_ccs(parse(t, unguarded)); },
          py::arg("process"), py::arg("unguarded") = false);
    m.def("normal_form",
          [](const std::string &t, bool unguarded) { return pretty_ccs(normal_form(parse(t, unguarded))); },
          py::arg("process"), py::arg("unguarded") = false);
    m.def("congruent", [](const std::string &a, const std::string &b) {
        return ccs_congruent(parse_ccs(a), parse_ccs(b));
    });
    m.def("pretty_state", [](const std::string &t) { return pretty_rccs(parse_rccs(t)); });
    m.def("origin", [](const std::string &t) { return pretty_ccs(origin(parse_rccs(t))); });
    m.def("encode_json", [](const std::string &t) { return to_json(encode_ccs(parse(t, true))).dump(); });
    m.def("encode_memory_json", [](const std::string &t) { return to_json(encode_memory(parse_rccs(t))).dump(); });
    m.def("lts_json", [](const std::string &t, std::size_t cap) {
        ExploreOptions o;
        o.state_cap = cap;
        return to_json(explore(parse_ccs(t), o)).dump();
    }, py::arg("process"), py::arg("state_cap") = 100000);
    m.def("encode_dot", [](const std::string &t) { return to_dot(encode_ccs(parse(t, true))); });
    m.def("check", &check_pair, py::arg("relation"), py::arg("p1"), py::arg("p2"),
          py::arg("weak") = false, py::arg("state_cap") = 100000);
}
