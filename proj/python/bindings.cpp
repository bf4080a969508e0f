#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rieszkit/casebook.hpp"
#include "rieszkit/commands.hpp"
#include "rieszkit/examples.hpp"
#include "rieszkit/specfile.hpp"

namespace py = pybind11;
using namespace rieszkit;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Report& r) { return r.to_json().dump(); }

CommandOptions options(const std::string& op, int probe, std::uint64_t seed, int level, int depth, int bound,
                       const std::string& e, const std::string& f) {
  CommandOptions o;
  o.op = op;
  o.probe = probe;
  o.seed = seed;
  o.level = level;
  o.depth = depth;
  o.bound = bound;
  o.e = e;
  o.f = f;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SpaceMismatch>(m, "SpaceMismatch", error);
  py::register_exception<InvalidIndex>(m, "InvalidIndex", error);
  py::register_exception<PreconditionError>(m, "PreconditionError", error);
  py::register_exception<UnsupportedHypothesis>(m, "UnsupportedHypothesis", error);
  py::register_exception<ParseError>(m, "ParseError", error);

  py::class_<Operator>(m, "Operator")
      .def_property_readonly("domain", [](const Operator& t) { return t.domain().name(); })
      .def_property_readonly("codomain", [](const Operator& t) { return t.codomain().name(); })
      .def("is_positive", [](const Operator& t) { return is_positive(t); })
      .def("__eq__", [](const Operator& a, const Operator& b) { return a == b; })
      .def("__str__", &Operator::to_string)
      .def("__repr__", [](const Operator& t) { return "<Operator " + t.domain().name() + " -> " + t.codomain().name() + ">"; });

  py::class_<SpecFile>(m, "SpecFile")
      .def_property_readonly("spaces",
                             [](const SpecFile& s) {
                               std::vector<std::string> out;
                               for (const auto& d : s.spaces) out.push_back(d.name);
                               return out;
                             })
      .def_property_readonly("operators",
                             [](const SpecFile& s) {
                               std::vector<std::string> out;
                               for (const auto& d : s.operators) out.push_back(d.name);
                               return out;
                             })
      .def_property_readonly("directives",
                             [](const SpecFile& s) {
                               std::vector<std::pair<std::string, std::vector<std::string>>> out;
                               for (const auto& d : s.directives) out.emplace_back(d.command, d.args);
                               return out;
                             })
      .def("build", &SpecFile::build, py::arg("name") = "")
      .def("__str__", [](const SpecFile& s) { return print_spec(s); })
      .def("__eq__", [](const SpecFile& a, const SpecFile& b) { return a == b; });

  m.def("parse_spec", &parse_spec, py::arg("text"));

  m.def("fremlin_operator", &fremlin_operator);
  m.def("pair_difference_operator", &pair_difference_operator);
  m.def("limit_rank_one", &limit_rank_one);
  m.def("matrix_operator", [](const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Scalar>> m;
    for (const auto& r : rows) {
      m.emplace_back();
      for (const auto& v : r) m.back().push_back(parse_scalar(v));
    }
    return Operator::from_matrix(m);
  });

  m.def("check_order_bounded", [](const Operator& t) { return dump(check_order_bounded_report(t)); });
  m.def("check_order_continuous", [](const Operator& t, int probe) { return dump(check_order_continuous_report(t, probe)); },
        py::arg("op"), py::arg("probe") = 8);
  m.def("positive_part", [](const Operator& t) { return dump(positive_part_report(t)); });
  m.def("project_oc", [](const Operator& t) { return dump(project_oc_report(t)); });
  m.def("witness_pervasive", [](const Operator& t) { return dump(witness_report(t)); });
  m.def("classify", [](const std::string& e, const std::string& f) {
    return dump(classify_report(parse_space_kind(e), parse_space_kind(f)));
  });
  m.def("casebook_names", &casebook_names);

  m.def(
      "dispatch",
      [](const std::string& command, const std::vector<std::string>& args, const SpecFile* spec, const std::string& op,
         int probe, std::uint64_t seed, int level, int depth, int bound, const std::string& e, const std::string& f) {
        return dump(dispatch(command, args, spec, options(op, probe, seed, level, depth, bound, e, f)));
      },
      py::arg("command"), py::arg("args") = std::vector<std::string>{}, py::arg("spec") = nullptr, py::arg("op") = "",
      py::arg("probe") = 8, py::arg("seed") = 42, py::arg("level") = 8, py::arg("depth") = 3, py::arg("bound") = 6,
      py::arg("E") = "", py::arg("F") = "");

  m.attr("__version__") = "0.1.0";
}
