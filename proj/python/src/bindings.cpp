#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ifol/error.hpp"
#include "ifol/grounding.hpp"
#include "ifol/session.hpp"
#include "ifol/syntax.hpp"

namespace py = pybind11;
using namespace ifol;

namespace {

session::Options make_options(const std::optional<std::string>& data_dir, const std::optional<std::string>& corpus,
                              int budget) {
    session::Options o;
    if (data_dir) o.data_dir = *data_dir;
    if (corpus) o.corpus = *corpus;
    o.budget = budget;
    return o;
}

std::vector<std::string> free_vars(const std::string& text) {
    std::vector<std::string> out;
    const auto f = syntax::parse_formula(text);
    for (const auto& v : f.free_vars()) out.push_back(v.name);
    return out;
}

py::dict demo(const std::optional<std::string>& data_dir, const std::optional<std::string>& corpus, int budget,
              std::int64_t tau) {
    session::DemoOptions o;
    o.session = make_options(data_dir, corpus, budget);
    o.tau = tau;
    const auto rep = session::run_demo(o);
    py::list checks;
    for (const auto& c : rep.checks) checks.append(py::make_tuple(c.name, c.ok, c.detail));
    py::dict out;
    out["ok"] = rep.ok();
    out["lines"] = rep.lines;
    out["checks"] = checks;
    out["found_clips"] = rep.found_clips;
    out["rendered"] = rep.rendered;
    out["answers"] = rep.answers;
    out["trace"] = rep.session->trace();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Intensional FOL reasoner with autoepistemic memory";

    auto base = py::register_exception<Error>(m, "IfolError");
    py::register_exception<SyntaxError>(m, "ParseError", base.ptr());
    py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
    py::register_exception<SignatureError>(m, "SignatureError", base.ptr());
    py::register_exception<MissingExtension>(m, "MissingExtension", base.ptr());
    py::register_exception<NotParseable>(m, "NotParseable", base.ptr());
    py::register_exception<MissingTemplate>(m, "MissingTemplate", base.ptr());

    m.def("canonical", [](const std::string& text) { return syntax::serialize(syntax::parse_formula(text)); },
          py::arg("formula"), "Parse a formula and print it in canonical form.");
    m.def("free_vars", &free_vars, py::arg("formula"), "Canonical free-variable tuple of a formula.");
    m.def("default_data_dir", &session::default_data_dir);

    py::class_<session::Session>(m, "Session")
        .def(py::init([](std::optional<std::string> data_dir, std::optional<std::string> corpus, int budget) {
                 return std::make_unique<session::Session>(make_options(data_dir, corpus, budget));
             }),
             py::arg("data_dir") = py::none(), py::arg("corpus") = py::none(), py::arg("budget") = 3)
        .def("load_kb", &session::Session::load_kb, py::arg("path"))
        .def("load_kb_text", &session::Session::load_kb_text, py::arg("text"), py::arg("origin") = "<kb>")
        .def("command", &session::Session::command, py::arg("line"))
        .def("experience",
             [](session::Session& s, const std::string& term) {
                 return s.experience(*syntax::parse_abstraction(term, &s.domain().signature())).id;
             },
             py::arg("term"), "Record Know(in_present, me, term); returns the atom id.")
        .def("chain",
             [](session::Session& s, std::optional<int> budget) {
                 return s.chain(budget ? *budget : s.options().budget).derived;
             },
             py::arg("budget") = py::none(), "Forward-chain; returns the ids of new atoms.")
        .def("consolidate", &session::Session::consolidate, py::arg("tau"))
        .def("answer",
             [](session::Session& s, const std::string& q) {
                 return std::string(epistemic::answer_name(s.answer(s.parse(q))));
             },
             py::arg("query"))
        .def("eval", [](session::Session& s, const std::string& f) { return s.eval(s.parse(f)); }, py::arg("sentence"))
        .def("render", &session::Session::render, py::arg("atom_id"))
        .def("pars",
             [](const session::Session& s, const std::string& sentence) {
                 return syntax::serialize(grounding::pars(s.lexicon(), sentence));
             },
             py::arg("sentence"))
        .def("dump", &session::Session::dump, py::arg("what") = "kb")
        .def_property_readonly("trace", &session::Session::trace);

    m.def("run_demo", &demo, py::arg("data_dir") = py::none(), py::arg("corpus") = py::none(), py::arg("budget") = 3,
          py::arg("tau") = 1700000000);
}
