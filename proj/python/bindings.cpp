// Python bindings: diagrams, linear combinations as {serialization: int},
// homology, the chord oracle and the verification suites.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vw/checks.hpp"
#include "vw/chord_oracle.hpp"
#include "vw/error.hpp"
#include "vw/homology.hpp"
#include "vw/hopf.hpp"
#include "vw/relations.hpp"
#include "vw/workbench.hpp"

namespace py = pybind11;
using namespace vw;

namespace {

py::int_ to_py(const mpz_class& x) {
  const std::string s = x.get_str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

mpz_class from_py(const py::int_& x) { return mpz_class(std::string(py::str(py::handle(x)))); }

using PyComb = std::map<std::string, py::int_>;

PyComb to_dict(const LinComb& x) {
  PyComb out;
  for (const auto& [d, c] : x) out.emplace(serialize(d), to_py(c));
  return out;
}

LinComb from_dict(const PyComb& m) {
  LinComb x;
  for (const auto& [s, c] : m) x.add(parse_diagram(s), from_py(c));
  return x;
}

py::dict group_dict(const HomologyGroup& g) {
  py::dict d;
  d["free_rank"] = g.free_rank;
  py::list t;
  for (const auto& f : g.torsion) t.append(to_py(f));
  d["torsion"] = t;
  return d;
}

Parity P(const std::string& s) { return parse_parity(s); }
ComplexVariant V(const std::string& s) { return parse_variant(s); }

}  // namespace

PYBIND11_MODULE(_vw, m) {
  m.doc() = "Exact homology of the Vassiliev diagram complexes";
  m.attr("ENGINE_VERSION") = kEngineVersion;

  auto base = py::register_exception<Error>(m, "EngineError", PyExc_RuntimeError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<InvariantFailure>(m, "InvariantFailure", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidDiagram>(m, "InvalidDiagram", PyExc_ValueError);

  m.def("normalize", [](const std::string& s) { return serialize(parse_diagram(s)); }, py::arg("diagram"),
        "Canonical serialization of a diagram.");
  m.def(
      "bigrading",
      [](const std::string& s) {
        Diagram d = parse_diagram(s);
        return std::make_pair(d.complexity(), d.distinct_points());
      },
      py::arg("diagram"), "(i, j) of a diagram.");
  m.def(
      "validate",
      [](const std::string& s, const std::string& v, bool generalized) {
        ValidityReport r = validate(parse_diagram(s), V(v), {.generalized = generalized});
        return r.violations;
      },
      py::arg("diagram"), py::arg("complex"), py::arg("generalized") = false,
      "Violated conditions; empty when the diagram belongs to the complex.");
  m.def("is_admissible", [](const std::string& s) { return is_admissible(parse_diagram(s)); }, py::arg("diagram"));

  m.def("basis", [](const std::string& v, const std::string& p, int i, int j) {
    SliceBasis s = enumerate_slice(V(v), P(p), i, j);
    std::vector<PyComb> out;
    for (std::size_t k = 0; k < s.dimension(); ++k) out.push_back(to_dict(s.element(k)));
    return out;
  }, py::arg("complex"), py::arg("parity"), py::arg("i"), py::arg("j"), "Basis of a slice as combinations.");
  m.def("dimension", [](const std::string& v, const std::string& p, int i, int j) {
    return enumerate_slice(V(v), P(p), i, j).dimension();
  }, py::arg("complex"), py::arg("parity"), py::arg("i"), py::arg("j"));
  m.def(
      "differential_matrix",
      [](const std::string& v, const std::string& p, int i, int j) {
        DifferentialMatrix dm = differential_matrix(V(v), P(p), i, j);
        std::vector<std::tuple<int, int, py::int_>> t;
        for (int c = 0; c < dm.entries.cols; ++c)
          for (const auto& [r, x] : dm.entries.columns[c]) t.emplace_back(r, c, to_py(x));
        py::dict d;
        d["rows"] = dm.entries.rows;
        d["cols"] = dm.entries.cols;
        d["entries"] = t;
        d["source_hash"] = dm.source_hash;
        d["target_hash"] = dm.target_hash;
        return d;
      },
      py::arg("complex"), py::arg("parity"), py::arg("i"), py::arg("j"), "Sparse (row, col, value) triplets.");

  m.def("d", [](const PyComb& x, const std::string& v, const std::string& p) {
    return to_dict(differential(V(v), from_dict(x), P(p)));
  }, py::arg("x"), py::arg("complex"), py::arg("parity"), "The differential of a complex, reduced.");
  m.def("d_h", [](const PyComb& x, const std::string& p) { return to_dict(d_h(from_dict(x), P(p))); },
        py::arg("x"), py::arg("parity"));
  m.def("d_v", [](const PyComb& x, const std::string& p) { return to_dict(d_v(from_dict(x), P(p))); },
        py::arg("x"), py::arg("parity"));
  m.def("reduce", [](const PyComb& x, const std::string& p) { return to_dict(arnold_reduce(from_dict(x), P(p))); },
        py::arg("x"), py::arg("parity"), "Arnold normal form.");

  m.def("Z", [](int k, const std::string& p) { return to_dict(make_Z(k, P(p))); }, py::arg("k"), py::arg("parity"));
  m.def("Zhat", [](int k, const std::string& p) { return to_dict(make_Zhat(k, P(p))); }, py::arg("k"),
        py::arg("parity"));
  m.def("star", [] { return to_dict(make_star()); });
  m.def("product", [](const PyComb& a, const PyComb& b, const std::string& p) {
    return to_dict(shuffle_product(from_dict(a), from_dict(b), P(p)));
  }, py::arg("a"), py::arg("b"), py::arg("parity"), "Shuffle product.");
  m.def("vdash", [](const PyComb& a, const PyComb& b, const std::string& p) {
    return to_dict(vdash(from_dict(a), from_dict(b), P(p)));
  }, py::arg("a"), py::arg("b"), py::arg("parity"));
  m.def("divided_power", [](const PyComb& x, int l, const std::string& p) {
    return to_dict(divided_power(from_dict(x), l, P(p)));
  }, py::arg("x"), py::arg("l"), py::arg("parity"));
  m.def("iso_I", [](const PyComb& x, const std::string& p) { return to_dict(iso_I(from_dict(x), P(p))); },
        py::arg("x"), py::arg("parity"));
  m.def("iso_I_inv", [](const PyComb& x, const std::string& p) { return to_dict(iso_I_inv(from_dict(x), P(p))); },
        py::arg("x"), py::arg("parity"));

  m.def("homology", [](const std::string& v, const std::string& p, int i, int j, const std::string& ring) {
    py::gil_scoped_release nogil;
    HomologyGroup g = homology_group(V(v), P(p), i, j, parse_ring(ring));
    py::gil_scoped_acquire gil;
    return group_dict(g);
  }, py::arg("complex"), py::arg("parity"), py::arg("i"), py::arg("j"), py::arg("ring") = "Z");
  m.def("dual_homology", [](const std::string& v, const std::string& p, int i, int j, const std::string& ring) {
    return group_dict(dual_homology_group(V(v), P(p), i, j, parse_ring(ring)));
  }, py::arg("complex"), py::arg("parity"), py::arg("i"), py::arg("j"), py::arg("ring") = "Q");
  m.def(
      "homology_table",
      [](const std::vector<std::string>& complexes, const std::vector<std::string>& parities, int i_max,
         const std::string& ring, int jobs) {
        JobSpec s;
        s.command = "homology";
        s.variants.clear();
        for (const auto& c : complexes) s.variants.push_back(V(c));
        s.parities.clear();
        for (const auto& p : parities) s.parities.push_back(P(p));
        s.i_max = i_max;
        s.ring = parse_ring(ring);
        s.no_cache = true;
        s.jobs = jobs;
        std::ostringstream out, log;
        {
          py::gil_scoped_release nogil;
          cmd_homology(s, out, log);
        }
        return out.str();
      },
      py::arg("complexes"), py::arg("parities"), py::arg("i_max"), py::arg("ring") = "Z", py::arg("jobs") = 1,
      "Homology table as JSON text.");

  m.def("chord_space_dims", [](int order_max, const std::string& rel, const std::string& field) {
    ChordRelations r;
    if (rel == "4T") r = ChordRelations::FourT;
    else if (rel == "4T+1T") r = ChordRelations::FourTOneT;
    else throw ArgumentError("relations are 4T or 4T+1T");
    return chord_space_dims(order_max, r, parse_ring(field));
  }, py::arg("order_max"), py::arg("relations") = "4T", py::arg("field") = "Q");

  m.def("suite_names", &suite_names);
  m.def(
      "verify",
      [](const std::string& suite, int i_max, const std::vector<std::string>& parities, int random_cases) {
        SuiteOptions o;
        o.i_max = i_max;
        o.parities.clear();
        for (const auto& p : parities) o.parities.push_back(P(p));
        o.random_cases = random_cases;
        SuiteReport r;
        {
          py::gil_scoped_release nogil;
          r = run_suite(suite, o);
        }
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.pass;
          d["cases"] = c.cases;
          d["detail"] = c.detail;
          checks.append(d);
        }
        py::dict out;
        out["suite"] = r.suite;
        out["passed"] = r.pass();
        out["seconds"] = r.seconds;
        out["checks"] = checks;
        return out;
      },
      py::arg("suite"), py::arg("i_max") = 3, py::arg("parities") = std::vector<std::string>{"even", "odd"},
      py::arg("random_cases") = 500);
}
