#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "adia/acceptance.hpp"
#include "adia/apt.hpp"
#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/propagate.hpp"
#include "adia/sweep.hpp"

namespace py = pybind11;
using namespace adia;

namespace {

Schedule schedule_by_name(const std::string& name, int p, double N) {
  return make_schedule(name, p, N);
}

py::dict closed_forms_dict(double N, const std::string& schedule, double C, int p) {
  ScheduleKind kind = ScheduleKind::beta;
  if (schedule == "linear") kind = ScheduleKind::linear;
  if (schedule == "optimal") kind = ScheduleKind::optimal;
  const GroverClosedForms cf = closed_tradeoff(N, kind, C, p);
  py::dict d;
  d["N"] = cf.N;
  d["schedule"] = cf.schedule;
  d["p"] = cf.p;
  d["C"] = cf.C;
  d["J0"] = cf.J0;
  d["lambda10_end"] = cf.lambda10_end;
  d["omega10"] = cf.omega10;
  d["T_val"] = cf.tradeoff.T_val;
  d["eps_tilde"] = cf.tradeoff.eps_tilde;
  d["bound_coefficient"] = cf.tradeoff.bound_coefficient;
  return d;
}

}  // namespace

PYBIND11_MODULE(_adia, m) {
  m.doc() = "adiabatic error trade-off tools";

  // translators are tried newest first
  py::register_exception<Error>(m, "AdiaError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Schedule>(m, "Schedule")
      .def_static("linear", &Schedule::linear)
      .def_static("optimal", &Schedule::optimal, py::arg("N"))
      .def_static("beta", &Schedule::beta, py::arg("p"))
      .def_static("from_constant_fisher", &schedule_from_constant_fisher, py::arg("N"),
                  py::arg("tol") = 1e-12)
      .def("__call__", &Schedule::operator(), py::arg("s"), py::arg("order") = 0)
      .def_property_readonly("name", &Schedule::name);

  py::enum_<GroverMode>(m, "GroverMode")
      .value("reduced2", GroverMode::reduced2)
      .value("fullN", GroverMode::fullN);

  py::class_<HamiltonianFamily>(m, "HamiltonianFamily")
      .def("__call__", &HamiltonianFamily::operator(), py::arg("s"), py::arg("order") = 0)
      .def_property_readonly("dimension", &HamiltonianFamily::dimension)
      .def_property_readonly("name", &HamiltonianFamily::name);

  m.def("grover_family", &grover_family, py::arg("N"), py::arg("schedule"),
        py::arg("mode") = GroverMode::reduced2, py::arg("marked") = 0);
  m.def("interpolating", [](const Matrix& hi, const Matrix& hf, const Schedule& f) {
    return interpolating(hi, hf, f);
  });
  m.def("make_schedule", &schedule_by_name, py::arg("name"), py::arg("p") = 0, py::arg("N") = 0.0);

  py::class_<TradeoffResult>(m, "Tradeoff")
      .def_readonly("T_val", &TradeoffResult::T_val)
      .def_readonly("eps_tilde", &TradeoffResult::eps_tilde)
      .def_readonly("C", &TradeoffResult::C)
      .def_readonly("p", &TradeoffResult::p)
      .def_readonly("bound_coefficient", &TradeoffResult::bound_coefficient)
      .def("bound", &TradeoffResult::bound);

  m.def("tradeoff", [](const HamiltonianFamily& fam, double C, int p) {
    return p == 0 ? tradeoff(endpoint_data(fam), C) : bc_tradeoff(fam, p, C);
  }, py::arg("family"), py::arg("C"), py::arg("p") = 0);

  m.def("distance_bounds", [](const HamiltonianFamily& fam, std::vector<double> T, int p) {
    const EndpointData d = endpoint_data(fam);
    std::vector<std::tuple<double, double, double>> out;
    for (double t : T) {
      const DistanceBounds b = distance_bounds(d, fam, t, p);
      out.emplace_back(leading_distance(d, fam, t, p), b.lower, b.upper);
    }
    return out;
  }, py::arg("family"), py::arg("T"), py::arg("p") = 0,
     "(leading, lower, upper) for each run time");

  m.def("final_distance", [](const HamiltonianFamily& fam, double T, double tol) {
    PropagationOptions opt;
    opt.tol = tol;
    py::gil_scoped_release release;
    return propagate(fam, T, opt).final_distance();
  }, py::arg("family"), py::arg("T"), py::arg("tol") = 1e-9);

  m.def("trace", [](const HamiltonianFamily& fam, double T, int points, double tol) {
    PropagationOptions opt;
    opt.tol = tol;
    opt.output_points = points;
    const SimulationTrace tr = propagate(fam, T, opt);
    return py::make_tuple(tr.s, tr.distances, tr.norms);
  }, py::arg("family"), py::arg("T"), py::arg("points") = 101, py::arg("tol") = 1e-9);

  m.def("closed_forms", &closed_forms_dict, py::arg("N"), py::arg("schedule"), py::arg("C"),
        py::arg("p") = 0);

  m.def("sweep_csv", [](const std::string& model, const std::string& schedule, int p,
                        std::vector<long> N, std::vector<double> T, int jobs) {
    RunConfig c;
    c.model = parse_model(model);
    c.schedule = schedule;
    c.p = p;
    c.N = std::move(N);
    c.T_list = std::move(T);
    c.jobs = jobs;
    validate(c);
    SweepResult r;
    {
      py::gil_scoped_release release;
      r = run_sweep(c);
    }
    std::ostringstream out;
    write_csv(out, r.records);
    return out.str();
  }, py::arg("model") = "grover-reduced", py::arg("schedule") = "optimal", py::arg("p") = 0,
     py::arg("N") = std::vector<long>{32}, py::arg("T") = std::vector<double>{},
     py::arg("jobs") = 0);

  m.def("criteria", [] {
    std::vector<std::string> names;
    for (const auto& c : acceptance_criteria()) names.push_back(c.name);
    return names;
  });
  m.def("run_criterion", [](const std::string& name) {
    const CriterionResult r = run_criterion(name);
    return py::make_tuple(r.passed, format_result(r));
  });
}
