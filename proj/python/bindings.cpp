#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latnet/analysis.hpp"
#include "latnet/dsl.hpp"
#include "latnet/io.hpp"
#include "latnet/recovery.hpp"

namespace py = pybind11;
using namespace latnet;

namespace {

LogicalMatrix from_delta(std::size_t rows, const std::vector<std::size_t>& cols) { return LogicalMatrix::delta(rows, cols); }

std::vector<std::size_t> delta_of(const LogicalMatrix& m) { return m.delta_indices(); }

DistinguishMode mode_of(const std::string& name) {
  if (name == "paper") return DistinguishMode::paper;
  if (name == "standard") return DistinguishMode::standard;
  throw py::value_error("mode must be 'paper' or 'standard'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Control networks over finite lattices";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dsl::ModelError& e) {
      py::set_error(error, (std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) + ": " + e.message()).c_str());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<FiniteLattice>(m, "Lattice")
      .def_property_readonly("size", &FiniteLattice::size)
      .def_property_readonly("labels", &FiniteLattice::labels)
      .def_property_readonly("bottom", &FiniteLattice::bottom)
      .def_property_readonly("top", &FiniteLattice::top)
      .def("join", &FiniteLattice::join)
      .def("meet", &FiniteLattice::meet)
      .def("leq", &FiniteLattice::leq)
      .def("find", &FiniteLattice::find)
      .def("covers", &FiniteLattice::covers)
      .def("join_table", [](const FiniteLattice& l) { return delta_of(l.join_matrix()); })
      .def("meet_table", [](const FiniteLattice& l) { return delta_of(l.meet_matrix()); })
      .def("__repr__", [](const FiniteLattice& l) { return "<Lattice with " + std::to_string(l.size()) + " elements>"; });

  m.def("chain", &chain, py::arg("k"));
  m.def("product", &product, py::arg("first"), py::arg("second"));
  m.def(
      "lattice_from_join",
      [](const std::vector<std::size_t>& table, std::vector<std::string> labels) {
        std::size_t k = 0;
        while (k * k < table.size()) ++k;
        return lattice_from_join(from_delta(k, table), std::move(labels));
      },
      py::arg("table"), py::arg("labels") = std::vector<std::string>{},
      "Lattice from a row-major join table of 1-based element indices.");

  py::class_<ASSR>(m, "ASSR")
      .def_readonly("k", &ASSR::k)
      .def_readonly("n", &ASSR::n)
      .def_readonly("m", &ASSR::m)
      .def_property_readonly("M", [](const ASSR& a) { return delta_of(a.M); })
      .def_property_readonly("E", [](const ASSR& a) -> std::optional<std::vector<std::size_t>> {
        if (!a.E) return std::nullopt;
        return delta_of(*a.E);
      })
      .def_property_readonly("num_states", &ASSR::num_states)
      .def_property_readonly("num_inputs", &ASSR::num_inputs)
      .def("step", &ASSR::step, py::arg("u"), py::arg("x"))
      .def("json", [](const ASSR& a) { return io::assr_json(a).dump(); });

  m.def(
      "assr_from_matrix",
      [](const std::vector<std::size_t>& cols, std::size_t k, std::size_t n, std::size_t inputs) {
        return assr_from_matrix(from_delta(checked_pow(k, n), cols), k, n, inputs);
      },
      py::arg("cols"), py::arg("k"), py::arg("n"), py::arg("m") = 0,
      "Structure matrix from 1-based column indices.");

  m.def(
      "load_network",
      [](const std::string& text, const std::string& name) {
        const auto model = dsl::parse_model(text);
        const dsl::NetworkDecl* net = nullptr;
        if (name.empty()) {
          if (model.networks.size() != 1) throw py::value_error("model has " + std::to_string(model.networks.size()) + " networks; pass a name");
          net = &model.networks.front();
        } else {
          net = model.find_network(name);
          if (!net) throw py::value_error("no network '" + name + "'");
        }
        return py::make_tuple(assemble(net->def), net->def.lattice);
      },
      py::arg("text"), py::arg("name") = "", "Parses model text and assembles one network: (ASSR, Lattice).");
  m.def("format_model", [](const std::string& text) { return dsl::print_model(dsl::parse_model(text)); },
        "Canonical text of a model.");

  m.def("controllability_matrix", [](const ASSR& a) { return io::to_json(controllability_matrix(a)).get<std::vector<std::string>>(); });
  m.def("is_controllable", &is_controllable);
  m.def(
      "is_observable",
      [](const ASSR& a, const std::string& mode) {
        const auto v = is_observable(a, mode_of(mode));
        return py::make_tuple(v.observable, v.witness);
      },
      py::arg("assr"), py::arg("mode") = "paper", "(observable, first indistinguishable pair or None), 0-based.");
  m.def(
      "distinguishable_pairs",
      [](const ASSR& a, const std::string& mode) { return distinguishability(a, mode_of(mode)).pairs; },
      py::arg("assr"), py::arg("mode") = "paper");
  m.def(
      "factor",
      [](const ASSR& a, std::size_t k1, std::size_t k2) {
        auto f = factor_network(a, k1, k2);
        return py::make_tuple(std::move(f.first), std::move(f.second));
      },
      py::arg("assr"), py::arg("k1"), py::arg("k2"));
  m.def(
      "recover_json",
      [](const ASSR& a, const std::string& mode, std::vector<std::string> labels) {
        if (mode != "monotone" && mode != "comparable") throw py::value_error("mode must be 'monotone' or 'comparable'");
        const auto r = recover_lattice(a, mode == "monotone" ? PairMode::monotone : PairMode::comparable, std::move(labels));
        return io::recovery_json(r).dump();
      },
      py::arg("assr"), py::arg("mode") = "monotone", py::arg("labels") = std::vector<std::string>{});
  m.def(
      "simulate",
      [](const ASSR& a, std::size_t x0, const std::vector<std::size_t>& inputs, std::size_t steps) {
        return a.control_form() ? simulate(a, x0, inputs).states : simulate(a, x0, steps).states;
      },
      py::arg("assr"), py::arg("x0"), py::arg("inputs") = std::vector<std::size_t>{}, py::arg("steps") = 0);
}
