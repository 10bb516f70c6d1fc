// Python bindings for the zeno core library.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"
#include "zeno/kraus.hpp"
#include "zeno/state.hpp"
#include "zeno/sweep.hpp"
#include "zeno/target.hpp"

namespace py = pybind11;
using namespace zeno;

namespace {

using Array = py::array_t<double>;

Array coordinates_array(const std::vector<GeneralizedState>& states) {
  Array out({states.size(), kNumCoords});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t k = 0; k < kNumCoords; ++k) view(i, k) = states[i].v[k];
  return out;
}

Array momenta_array(const std::vector<ConjugateMomenta>& momenta) {
  Array out({momenta.size(), kNumCoords});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < momenta.size(); ++i)
    for (std::size_t k = 0; k < kNumCoords; ++k) view(i, k) = momenta[i][k];
  return out;
}

GeneralizedState to_state(const Coordinates& v) {
  GeneralizedState s;
  s.v = v;
  return s;
}

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict d;
  d["times"] = Array(traj.times.size(), traj.times.data());
  d["states"] = coordinates_array(traj.states);
  if (traj.has_momenta()) d["momenta"] = momenta_array(traj.momenta);
  return d;
}

py::object period_obj(const std::optional<PeriodEstimate>& p) {
  if (!p) return py::none();
  py::dict d;
  d["period"] = p->period;
  d["max_to_max"] = p->max_to_max;
  d["minima"] = p->minima;
  return d;
}

py::object saturation_obj(const std::optional<SaturationEstimate>& s) {
  if (!s) return py::none();
  py::dict d;
  d["value"] = s->value;
  d["spread"] = s->spread;
  d["onset"] = s->onset;
  return d;
}

std::array<double, 3> as_array(const BlochVector& v) { return {v.x, v.y, v.z}; }
BlochVector as_bloch(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

}  // namespace

PYBIND11_MODULE(_zeno, m) {
  m.doc() = "Monitored two-qubit dynamics: coordinate equations, Kraus oracle, targets and sweeps.";
  m.attr("NUM_COORDS") = kNumCoords;
  m.attr("COORD_NAMES") = std::vector<std::string>{"x1",  "y1",  "z1",  "x2",  "y2",  "z2",  "e11", "e12",
                                                   "e13", "e21", "e22", "e23", "e31", "e32", "e33"};

  auto base = py::register_exception<Error>(m, "ZenoError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<StepDiverged>(m, "StepDiverged", base.ptr());
  py::register_exception<DegenerateNormalization>(m, "DegenerateNormalization", base.ptr());
  py::register_exception<PlaneLeavingInteraction>(m, "PlaneLeavingInteraction", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<DegenerateInteraction>(m, "DegenerateInteraction", base.ptr());

  py::class_<ZenoConfig>(m, "Config")
      .def(py::init([](double rabi1, double rabi2, double alpha1, double alpha2, double dt, double t_final,
                       std::size_t stride, std::optional<Coordinates> initial) {
             ZenoConfig cfg = ZenoConfig::from_rabi(rabi1, rabi2, alpha1, alpha2);
             cfg.dt = dt;
             cfg.t_final = t_final;
             cfg.stride = stride;
             if (initial) cfg.initial.v = *initial;
             return cfg;
           }),
           py::arg("rabi1") = 1.0, py::arg("rabi2") = 1.0, py::arg("alpha1") = 0.0, py::arg("alpha2") = 0.0,
           py::arg("dt") = 1e-4, py::arg("t_final") = 20.0, py::arg("stride") = 100,
           py::arg("initial") = std::nullopt)
      .def_readwrite("omega1", &ZenoConfig::omega1)
      .def_readwrite("omega2", &ZenoConfig::omega2)
      .def_readwrite("alpha1", &ZenoConfig::alpha1)
      .def_readwrite("alpha2", &ZenoConfig::alpha2)
      .def_readwrite("dt", &ZenoConfig::dt)
      .def_readwrite("t_final", &ZenoConfig::t_final)
      .def_readwrite("stride", &ZenoConfig::stride)
      .def_property(
          "initial", [](const ZenoConfig& c) { return c.initial.v; },
          [](ZenoConfig& c, const Coordinates& v) { c.initial.v = v; })
      .def("validate", &ZenoConfig::validate)
      .def("__repr__", [](const ZenoConfig& c) {
        return py::str("Config(rabi1={}, rabi2={}, alpha1={}, alpha2={}, dt={}, t_final={}, stride={})")
            .format(2 * c.omega1, 2 * c.omega2, c.alpha1, c.alpha2, c.dt, c.t_final, c.stride);
      });

  // State conversions.
  m.def("basis_state", [](int a, int b) { return GeneralizedState::basis(a, b).v; }, py::arg("a"), py::arg("b"));
  m.def("reconstruct_density", [](const Coordinates& v) { return reconstruct_density(to_state(v)); });
  m.def("extract_coordinates", [](const Matrix4c& rho) { return extract_coordinates(rho).v; });
  m.def("partial_trace_second", &partial_trace_second);
  m.def("von_neumann_entropy", py::overload_cast<const Matrix2c&>(&von_neumann_entropy));
  m.def("entropy_from_bloch_radius", &entropy_from_bloch_radius);

  // Coordinate dynamics.
  m.def("ode_rhs", [](const Coordinates& v, const ZenoConfig& cfg) { return ode_rhs(to_state(v), cfg); });
  m.def("log_prob_functional",
        [](const Coordinates& v, const ZenoConfig& cfg) { return log_prob_functional(to_state(v), cfg); });
  m.def("stochastic_hamiltonian", [](const Coordinates& q, const Coordinates& p, const ZenoConfig& cfg) {
    return stochastic_hamiltonian(to_state(q), ConjugateMomenta{p}, cfg);
  });
  m.def(
      "integrate",
      [](const ZenoConfig& cfg, std::optional<Coordinates> momenta) {
        std::optional<ConjugateMomenta> p;
        if (momenta) p = ConjugateMomenta{*momenta};
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = integrate(cfg, p);
        }
        return trajectory_dict(traj);
      },
      py::arg("config"), py::arg("momenta") = std::nullopt,
      "RK4 trajectory as a dict of numpy arrays: times (n,), states (n, 15) and, with momenta, momenta (n, 15).");
  m.def("entropy_series", [](const ZenoConfig& cfg) {
    Trajectory traj;
    {
      py::gil_scoped_release release;
      traj = integrate(cfg);
    }
    const auto S = entropy_series(traj);
    return py::make_tuple(Array(traj.times.size(), traj.times.data()), Array(S.size(), S.data()));
  });

  // Kraus oracle.
  m.def("system_hamiltonian", &system_hamiltonian);
  m.def("build_kraus", [](const ZenoConfig& cfg, int r, double dt) { return build_kraus(cfg, r, dt); });
  m.def("kraus_step", &kraus_step, py::arg("rho"), py::arg("config"), py::arg("dt"));
  m.def(
      "compare_with_oracle",
      [](const ZenoConfig& cfg, double dt) {
        OracleComparison c;
        {
          py::gil_scoped_release release;
          c = compare_with_oracle(cfg, dt);
        }
        py::dict d;
        d["dt"] = c.dt;
        d["max_deviation"] = c.max_deviation;
        d["time_of_max"] = c.time_of_max;
        return d;
      },
      py::arg("config"), py::arg("dt"));

  // Observables.
  m.def("measure_period", [](const std::vector<double>& y, const std::vector<double>& t) {
    return period_obj(measure_period(y, t));
  });
  m.def(
      "measure_saturation",
      [](const std::vector<double>& y, const std::vector<double>& t, double window, double tol) {
        return saturation_obj(measure_saturation(y, t, window, tol));
      },
      py::arg("series"), py::arg("times"), py::arg("window_fraction") = kDefaultSaturationWindow,
      py::arg("tolerance") = kSaturationTolerance);
  m.def("dominant_frequency",
        [](const std::vector<double>& y, const std::vector<double>& t) { return dominant_frequency(y, t); });

  // Sweeps.
  m.def(
      "run_sweep",
      [](const ZenoConfig& base, const std::string& axis, const std::vector<double>& values,
         const std::string& observables, std::size_t workers) {
        SweepPlan plan{base, parse_sweep_axis(axis), values, Observables::parse(observables), workers};
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = run_sweep(plan);
        }
        py::list records;
        for (const auto& rec : result.records) {
          py::dict d;
          d["value"] = rec.value;
          d["status"] = std::string(to_string(rec.status));
          d["diagnostics"] = rec.diagnostics;
          d["times"] = Array(rec.times.size(), rec.times.data());
          if (rec.trajectory) d["states"] = coordinates_array(rec.trajectory->states);
          if (!rec.entropy.empty()) d["entropy"] = Array(rec.entropy.size(), rec.entropy.data());
          d["saturation"] = saturation_obj(rec.saturation);
          d["period"] = period_obj(rec.period);
          d["z1_period"] = period_obj(rec.z1_period);
          d["dominant_frequency"] = rec.dominant_frequency ? py::cast(*rec.dominant_frequency) : py::none();
          records.append(d);
        }
        return records;
      },
      py::arg("base"), py::arg("axis"), py::arg("values"), py::arg("observables") = "trajectory",
      py::arg("workers") = 0);

  // Single-qubit target engineering.
  py::class_<InteractionOperator>(m, "Interaction")
      .def(py::init<double, double, double, double>(), py::arg("a") = 0.0, py::arg("b") = 0.0,
           py::arg("c") = 1.0, py::arg("d") = 0.0)
      .def_readwrite("a", &InteractionOperator::a)
      .def_readwrite("b", &InteractionOperator::b)
      .def_readwrite("c", &InteractionOperator::c)
      .def_readwrite("d", &InteractionOperator::d)
      .def("matrix", &InteractionOperator::matrix);

  py::class_<TargetDesign>(m, "TargetDesign")
      .def_readonly("theta", &TargetDesign::theta)
      .def_readonly("theta_alt", &TargetDesign::theta_alt)
      .def_readonly("lambda_", &TargetDesign::lambda)
      .def_readonly("xi", &TargetDesign::xi)
      .def_property_readonly("bloch", [](const TargetDesign& d) { return as_array(d.bloch()); })
      .def_property_readonly("bloch_alt", [](const TargetDesign& d) { return as_array(d.bloch_alt()); });

  m.def("design_target_theta", &design_target_theta, py::arg("interaction"), py::arg("lam"));
  m.def("theta_rhs", &theta_rhs, py::arg("theta"), py::arg("interaction"), py::arg("omega"), py::arg("alpha"));
  m.def("theta_slope", &theta_slope, py::arg("theta"), py::arg("interaction"), py::arg("alpha"));
  m.def(
      "single_qubit_bloch_rhs",
      [](const std::array<double, 3>& v, const InteractionOperator& S, double omega, double alpha) {
        return as_array(single_qubit_bloch_rhs(as_bloch(v), S, omega, alpha));
      },
      py::arg("bloch"), py::arg("interaction"), py::arg("omega"), py::arg("alpha"));
  m.def(
      "find_stationary",
      [](const InteractionOperator& S, double omega, double alpha) {
        std::vector<std::array<double, 3>> roots;
        for (const auto& v : find_stationary(S, omega, alpha).roots) roots.push_back(as_array(v));
        return roots;
      },
      py::arg("interaction"), py::arg("omega"), py::arg("alpha"));
  m.def(
      "evolve_bloch",
      [](const std::array<double, 3>& v0, const InteractionOperator& S, double omega, double alpha, double dt,
         double t_final) { return as_array(evolve_bloch(as_bloch(v0), S, omega, alpha, dt, t_final)); },
      py::arg("bloch"), py::arg("interaction"), py::arg("omega"), py::arg("alpha"), py::arg("dt") = 1e-3,
      py::arg("t_final") = 50.0);

  // Two-qubit target.
  m.def("two_qubit_jumps", &build_two_qubit_jumps);
  m.def(
      "two_qubit_stationarity",
      [](const Matrix4c& rho, double alpha, double scale) {
        const auto check = verify_stationary(rho, two_qubit_target_system(alpha, scale));
        return py::make_tuple(check.stationary, check.residual);
      },
      py::arg("rho"), py::arg("alpha") = 1.0, py::arg("scale") = 1.0);
  m.def("target_interaction_hamiltonian", &build_target_interaction_hamiltonian, py::arg("J"));
}
