#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tacx/cli.hpp"
#include "tacx/connected_sum.hpp"
#include "tacx/error.hpp"
#include "tacx/ezd.hpp"
#include "tacx/graph_ring.hpp"
#include "tacx/report.hpp"

namespace py = pybind11;
using namespace tacx;

namespace {

PrimeField field_for(const Presentation& p, std::optional<std::uint32_t> prime) {
  return PrimeField(prime.value_or(p.prime.value_or(PrimeField::kDefaultPrime)));
}

struct PyAlgebra {
  AlgebraPtr alg;

  static PyAlgebra from_text(const std::string& text, std::optional<std::uint32_t> prime) {
    const Presentation p = parse_ring_file(text);
    const PrimeField field = field_for(p, prime);
    validate_presentation(p, field);
    return {make_algebra(p, field)};
  }
  static PyAlgebra from_file(const std::string& path, std::optional<std::uint32_t> prime) {
    return from_text(read_text_file(path), prime);
  }
};

py::dict acyclicity_dict(const PeriodicComplex& c) {
  const AcyclicityReport r = check_total_acyclicity(c);
  py::dict d;
  d["period"] = c.period();
  d["is_complex"] = r.complex;
  d["exact_at"] = r.exact_at;
  d["dual_exact_at"] = r.dual_exact_at;
  d["totally_acyclic"] = r.totally_acyclic;
  return d;
}

std::vector<std::pair<std::string, std::string>> pairs_text(const ShortAlgebra& a, const std::vector<EzdPair>& ps) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : ps) out.emplace_back(format_form(a, p.a), format_form(a, p.b));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the tacx core library";

  // derived translators are registered later, so pybind11 tries them first
  static py::exception<Error> base = py::register_exception<Error>(m, "TacxError");
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<NotAComplex>(m, "NotAComplex", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<PyAlgebra>(m, "Algebra")
      .def_static("from_file", &PyAlgebra::from_file, py::arg("path"), py::arg("prime") = py::none())
      .def_static("from_text", &PyAlgebra::from_text, py::arg("text"), py::arg("prime") = py::none())
      .def_property_readonly("prime", [](const PyAlgebra& a) { return a.alg->field().modulus(); })
      .def_property_readonly("dim1", [](const PyAlgebra& a) { return a.alg->dim1(); })
      .def_property_readonly("dim2", [](const PyAlgebra& a) { return a.alg->dim2(); })
      .def_property_readonly("variables", [](const PyAlgebra& a) { return a.alg->presentation().variables; })
      .def("socle_dimension", [](const PyAlgebra& a) { return socle_dimension(*a.alg); })
      .def("is_gorenstein", [](const PyAlgebra& a) { return is_gorenstein(*a.alg); })
      .def("yoshino", [](const PyAlgebra& a) {
        const auto y = yoshino_check(*a.alg);
        py::dict d;
        d["dim1"] = y.dim1;
        d["dim2"] = y.dim2;
        d["dim_condition"] = y.dim_condition;
        return d;
      })
      .def("truncation_faithful",
           [](const PyAlgebra& a) { return verify_truncation(a.alg->presentation(), a.alg->field()); })
      .def("linear", [](const PyAlgebra& a, const std::string& expr) { return parse_linear_form(expr, a.alg); },
           "Coordinates of a linear form")
      .def("multiply", [](const PyAlgebra& a, const std::string& u, const std::string& v) {
        return a.alg->product(parse_linear_form(u, a.alg), parse_linear_form(v, a.alg));
      }, "Degree-2 coordinates of the product of two linear forms");

  m.def("verify_ezd", [](const PyAlgebra& a, const std::string& x, const std::string& y) {
    return verify_ezd(*a.alg, parse_linear_form(x, a.alg), parse_linear_form(y, a.alg));
  });
  m.def("search_ezd_exhaustive", [](const PyAlgebra& a, bool force, unsigned threads) {
    py::gil_scoped_release release;
    const auto found = search_ezd_exhaustive(*a.alg, {10'000'000, force, threads});
    return pairs_text(*a.alg, found);
  }, py::arg("algebra"), py::arg("force") = false, py::arg("threads") = 0);
  m.def("search_ezd_random", [](const PyAlgebra& a, std::size_t trials, std::uint64_t seed)
            -> std::optional<std::pair<std::string, std::string>> {
    const auto found = search_ezd_random(*a.alg, trials, seed);
    if (!found) return std::nullopt;
    return pairs_text(*a.alg, {*found}).front();
  }, py::arg("algebra"), py::arg("trials"), py::arg("seed") = 1);

  m.def("verify_complex", [](const std::string& path, std::optional<std::uint32_t> prime) {
    return acyclicity_dict(load_complex(path, prime).complex);
  }, py::arg("path"), py::arg("prime") = py::none());

  m.def("connected_sum", [](const std::string& ring1, const std::string& ring2, std::optional<std::uint32_t> prime) {
    const Presentation p1 = parse_ring_file(read_text_file(ring1));
    const Presentation p2 = parse_ring_file(read_text_file(ring2));
    const ConnectedSum cs = build_connected_sum(p1, p2, field_for(p1, prime));
    const auto g = gorenstein_crosscheck(cs);
    py::dict d;
    d["text"] = to_ring_text(cs.presentation);
    d["dim1"] = cs.ring->dim1();
    d["dim2"] = cs.ring->dim2();
    d["delta"] = degree2_text(*cs.ring, cs.delta);
    d["gorenstein"] = g.gor_r;
    d["gorenstein_consistent"] = g.consistent;
    return d;
  }, py::arg("ring1"), py::arg("ring2"), py::arg("prime") = py::none());

  m.def("assemble_files", [](const std::string& a_cx, const std::string& b_cx, bool auto_sign,
                             std::optional<std::uint32_t> prime) {
    const LoadedComplex a = load_complex(a_cx, prime), b = load_complex(b_cx, prime);
    const ConnectedSum cs = build_connected_sum(a.presentation, b.presentation, a.algebra->field());
    std::vector<LinearMatrix> am, bm;
    for (const auto& x : a.complex.maps()) am.push_back(x.rebind(cs.left.quotient));
    for (const auto& x : b.complex.maps()) bm.push_back(x.rebind(cs.right.quotient));
    const Assembly as = assemble(cs, PeriodicComplex(am), PeriodicComplex(bm), auto_sign);
    py::dict d = acyclicity_dict(as.complex);
    d["signs"] = as.signs;
    return d;
  }, py::arg("a_cx"), py::arg("b_cx"), py::arg("auto_sign") = true, py::arg("prime") = py::none());

  m.def("graph_import", [](const std::string& path, std::optional<std::uint32_t> prime) {
    const auto data = build_from_graph(parse_graph_file(read_text_file(path)),
                                       PrimeField(prime.value_or(PrimeField::kDefaultPrime)));
    py::dict d;
    d["text"] = to_ring_text(data.presentation);
    d["component_a"] = data.component_a;
    d["component_b"] = data.component_b;
    d["delta"] = degree2_text(*data.algebra, data.delta);
    d["fg_zero"] = data.fg_zero;
    d["delta_symmetric"] = data.delta_symmetric;
    d["delta_nonzero"] = data.delta_nonzero;
    d["truncation_faithful"] = data.truncation_faithful;
    d["intersection_dim"] = data.intersection_dim;
    return d;
  }, py::arg("path"), py::arg("prime") = py::none());

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the command-line front end; returns (exit code, stdout, stderr)");
}
