#include "app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "app/config.hpp"
#include "app/io.hpp"
#include "zeno/errors.hpp"
#include "zeno/kraus.hpp"
#include "zeno/sweep.hpp"
#include "zeno/target.hpp"

namespace zeno::app {

namespace {

Manifest start_manifest(std::string command, const ConfigFile& file) {
  Manifest m;
  m.command = std::move(command);
  m.config_path = file.path.string();
  m.config_text = file.text;
  return m;
}

Json integrator_json(const ZenoConfig& cfg) {
  return {{"method", "rk4"}, {"dt", cfg.dt}, {"steps", cfg.num_steps()}, {"stride", cfg.stride}};
}

void finish(const CommandOptions& opts, Manifest& m, const std::string& file_name) {
  m.outputs.push_back(file_name);
  write_json(opts.out / "manifest.json", m.to_json());
}

Json status_json(const std::optional<IntegrationFailure>& failure) {
  if (!failure) return {{"state", "ok"}};
  return {{"state", "diverged"}, {"failure_time", failure->time}, {"message", failure->message}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json period_json(const std::optional<PeriodEstimate>& p) {
  if (!p) return nullptr;
  return {{"period", p->period}, {"max_to_max", p->max_to_max}, {"minima", p->minima}};
}

Json saturation_json(const std::optional<SaturationEstimate>& s) {
  if (!s) return nullptr;
  return {{"value", s->value}, {"spread", s->spread}, {"onset", s->onset}};
}

Json matrix_json(const MatrixXc& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"real", std::move(re)}, {"imag", std::move(im)}};
}

Json bloch_json(const BlochVector& v) { return Json::array({v.x, v.y, v.z}); }

Json entropy_summary(const std::vector<double>& S, const std::vector<double>& times) {
  Json j;
  if (S.empty()) return j;
  const auto peak = std::max_element(S.begin(), S.end());
  const auto sat = measure_saturation(S, times);
  const auto per = measure_period(S, times);
  j["period"] = per ? Json(per->period) : Json(nullptr);
  j["saturation"] = sat ? Json(sat->value) : Json(nullptr);
  j["max_entropy"] = *peak;
  j["time_of_max"] = times[static_cast<std::size_t>(peak - S.begin())];
  j["final_entropy"] = S.back();
  j["ln2"] = kLn2;
  j["period_detail"] = period_json(per);
  j["saturation_detail"] = saturation_json(sat);
  return j;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const Infeasible*>(&e)) return "Infeasible";
  if (dynamic_cast<const DegenerateInteraction*>(&e)) return "Degenerate";
  if (dynamic_cast<const PlaneLeavingInteraction*>(&e)) return "PlaneLeavingInteraction";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  return "Error";
}

Json single_qubit_report(const TargetSettings& t, bool& ok) {
  const auto& S = t.interaction;
  const double alpha = 2.0 * t.lambda * t.omega;
  Json r;
  r["mode"] = "single_qubit";
  r["interaction"] = {{"a", S.a}, {"b", S.b}, {"c", S.c}, {"d", S.d}};
  r["lambda"] = t.lambda;
  r["omega"] = t.omega;
  r["alpha"] = alpha;
  ok = true;
  try {
    const TargetDesign d = design_target_theta(S, t.lambda);
    r["feasible"] = true;
    r["design"] = {
        {"theta", d.theta},
        {"theta_alt", d.theta_alt},
        {"xi", d.xi},
        {"bloch", bloch_json(d.bloch())},
        {"bloch_alt", bloch_json(d.bloch_alt())},
    };
    Json angles = Json::array();
    for (const double theta : {d.theta, d.theta_alt}) {
      const double slope = theta_slope(theta, S, alpha);
      angles.push_back({{"theta", theta},
                        {"bloch", Json::array({0.0, std::sin(theta), std::cos(theta)})},
                        {"rate", theta_rhs(theta, S, t.omega, alpha)},
                        {"slope", slope},
                        {"stable", slope < 0.0}});
    }
    r["design"]["angles"] = std::move(angles);
  } catch (const Error& e) {
    ok = false;
    r["feasible"] = false;
    r["error"] = {{"type", error_type(e)}, {"message", e.what()}};
  }
  const StationaryReport found = find_stationary(S, t.omega, alpha);
  Json points = Json::array();
  for (const auto& v : found.roots) {
    const BlochVector rate = single_qubit_bloch_rhs(v, S, t.omega, alpha);
    points.push_back({{"bloch", bloch_json(v)}, {"radius", v.norm()}, {"residual", rate.norm()}});
  }
  r["fixed_points"] = std::move(points);
  const BlochVector relaxed = evolve_bloch({0.0, 0.0, 1.0}, S, t.omega, alpha, 1e-3, 50.0);
  r["relaxed_from_north_pole"] = {{"t_final", 50.0}, {"bloch", bloch_json(relaxed)}};
  r["seed_failures"] = found.failures.size();
  return r;
}

Json two_qubit_report(const TargetSettings& t) {
  Json r;
  r["mode"] = "two_qubit";
  r["alpha"] = t.alpha;
  r["scale"] = t.scale;
  r["J"] = t.coupling;
  const auto jumps = build_two_qubit_jumps();
  r["jumps"] = {{"L2", matrix_json(jumps[0])}, {"L3", matrix_json(jumps[1])}};
  r["h_sys"] = matrix_json(two_qubit_target_hamiltonian(t.scale));
  const Matrix8c h_int = build_target_interaction_hamiltonian(t.coupling);
  r["h_int"] = matrix_json(h_int);
  r["h_int_hermiticity_defect"] = (h_int - h_int.adjoint()).cwiseAbs().maxCoeff();

  const LindbladSystem sys = two_qubit_target_system(t.alpha, t.scale);
  Json residuals;
  for (const auto& [name, a, b] : {std::tuple{"00", 0, 0}, {"11", 1, 1}, {"01", 0, 1}, {"10", 1, 0}}) {
    const MatrixXc rho = reconstruct_density(GeneralizedState::basis(a, b));
    const StationarityCheck c = verify_stationary(rho, sys);
    residuals[name] = {{"residual", c.residual}, {"stationary", c.stationary}};
  }
  r["stationarity"] = std::move(residuals);
  return r;
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& log) {
  const ConfigFile file = load_config(opts.config);
  const SimulationSettings sim = parse_simulation(file);
  const auto result = try_integrate(sim.config);
  const auto& traj = result.trajectory;
  const std::vector<double> S = sim.entropy ? entropy_series(traj) : std::vector<double>{};
  write_trajectory_csv(opts.out / "trajectory.csv", traj, S);

  Manifest m = start_manifest("simulate", file);
  m.resolved = config_to_json(sim.config);
  m.integrator = integrator_json(sim.config);
  m.status = status_json(result.failure);
  m.outputs.push_back("trajectory.csv");
  finish(opts, m, "manifest.json");
  fmt::print(log, "simulate: {} rows -> {}\n", traj.size(), (opts.out / "trajectory.csv").string());
  if (result.failure) {
    fmt::print(log, "diverged at t = {} ns: {}\n", result.failure->time, result.failure->message);
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_entropy(const CommandOptions& opts, std::ostream& log) {
  const ConfigFile file = load_config(opts.config);
  const SimulationSettings sim = parse_simulation(file);
  const auto result = try_integrate(sim.config);
  const auto& traj = result.trajectory;
  const std::vector<double> S = entropy_series(traj);
  write_series_csv(opts.out / "entropy.csv", {"time", "S"}, {traj.times, S});

  Json summary = entropy_summary(S, traj.times);
  summary["status"] = status_json(result.failure);
  write_json(opts.out / "summary.json", summary);

  Manifest m = start_manifest("entropy", file);
  m.resolved = config_to_json(sim.config);
  m.integrator = integrator_json(sim.config);
  m.status = status_json(result.failure);
  m.outputs = {"entropy.csv", "summary.json"};
  finish(opts, m, "manifest.json");
  fmt::print(log, "entropy: period {}, saturation {}\n", summary.value("period", Json(nullptr)).dump(),
             summary.value("saturation", Json(nullptr)).dump());
  return result.failure ? kExitDiverged : kExitOk;
}

int cmd_sweep(const CommandOptions& opts, std::ostream& log) {
  const ConfigFile file = load_config(opts.config);
  SweepPlan plan = parse_sweep(file);
  if (opts.workers != 0) plan.workers = opts.workers;
  const SweepResult result = run_sweep(plan);

  Manifest m = start_manifest("sweep", file);
  m.resolved = config_to_json(plan.base);
  m.resolved["axis"] = std::string(to_string(plan.axis));
  m.resolved["values"] = plan.values;
  m.resolved["observables"] = plan.observables.to_string();
  m.integrator = integrator_json(plan.base);

  Json records = Json::array();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const SweepRecord& rec = result.records[i];
    Json r;
    r["index"] = i;
    r["value"] = rec.value;
    r["status"] = std::string(to_string(rec.status));
    if (rec.status != RunStatus::Ok) {
      r["diagnostics"] = rec.diagnostics;
      if (rec.status == RunStatus::Diverged) r["failure_time"] = rec.failure_time;
      records.push_back(std::move(r));
      continue;
    }
    ++ok;
    const std::string name = fmt::format("value_{:03}.csv", i);
    if (rec.trajectory) {
      write_trajectory_csv(opts.out / name, *rec.trajectory, rec.entropy);
      r["csv"] = name;
    } else if (!rec.entropy.empty()) {
      write_series_csv(opts.out / name, {"time", "S"}, {rec.times, rec.entropy});
      r["csv"] = name;
    }
    if (plan.observables.saturation) r["saturation"] = saturation_json(rec.saturation);
    if (plan.observables.period) {
      r["period"] = period_json(rec.period);
      r["z1_period"] = period_json(rec.z1_period);
    }
    if (plan.observables.dominant_frequency) r["dominant_frequency"] = optional_number(rec.dominant_frequency);
    if (!rec.entropy.empty()) r["max_entropy"] = *std::max_element(rec.entropy.begin(), rec.entropy.end());
    if (r.contains("csv")) m.outputs.push_back(r["csv"].get<std::string>());
    records.push_back(std::move(r));
  }

  Json aggregate;
  aggregate["axis"] = std::string(to_string(plan.axis));
  aggregate["values"] = plan.values;
  aggregate["observables"] = plan.observables.to_string();
  aggregate["succeeded"] = ok;
  aggregate["records"] = std::move(records);
  write_json(opts.out / "aggregate.json", aggregate);
  m.outputs.push_back("aggregate.json");
  m.status = {{"state", ok > 0 ? "ok" : "failed"}, {"succeeded", ok}, {"total", result.records.size()}};
  finish(opts, m, "manifest.json");
  fmt::print(log, "sweep: {}/{} values succeeded\n", ok, result.records.size());
  return ok > 0 ? kExitOk : kExitDiverged;
}

int cmd_target(const CommandOptions& opts, std::ostream& log) {
  const ConfigFile file = load_config(opts.config);
  const TargetSettings t = parse_target(file);
  bool ok = true;
  const Json report =
      t.mode == TargetSettings::Mode::SingleQubit ? single_qubit_report(t, ok) : two_qubit_report(t);
  write_json(opts.out / "report.json", report);

  Manifest m = start_manifest("target", file);
  m.resolved = {{"mode", report["mode"]}};
  m.status = {{"state", ok ? "ok" : "error"}};
  m.outputs.push_back("report.json");
  finish(opts, m, "manifest.json");
  if (!ok) {
    fmt::print(log, "target: {}\n", report["error"]["message"].get<std::string>());
    return kExitTarget;
  }
  fmt::print(log, "target: report -> {}\n", (opts.out / "report.json").string());
  return kExitOk;
}

int cmd_verify(const CommandOptions& opts, std::ostream& log) {
  const ConfigFile file = load_config(opts.config);
  const SimulationSettings sim = parse_simulation(file);
  const VerifySettings v = parse_verify(file);
  const CoordinateRhs rhs = v.fault == "flipped_z1" ? CoordinateRhs(ode_rhs_flipped_z1) : CoordinateRhs{};

  std::vector<double> dts = v.dts;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  // Below this the comparison is at round-off and no order can be read off.
  constexpr double kNoiseFloor = 1e-10;

  std::vector<double> deviations, at_time, orders;
  Json rows = Json::array();
  bool pass = true;
  fmt::print(log, "{:>12} {:>14} {:>10} {:>8}\n", "dt", "max_dev", "t_at_max", "order");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    OracleComparison c{dts[i], std::numeric_limits<double>::infinity(), 0.0};
    std::string note;
    try {
      c = compare_with_oracle(sim.config, dts[i], rhs);
    } catch (const Error& e) {
      note = e.what();
    }
    double order = std::nan("");
    if (i > 0 && deviations.back() > kNoiseFloor) {
      order = std::log(deviations.back() / c.max_deviation) / std::log(dts[i - 1] / dts[i]);
      if (!(order >= v.min_order)) pass = false;
    }
    if (!(c.max_deviation <= v.tolerance)) pass = false;
    deviations.push_back(c.max_deviation);
    at_time.push_back(c.time_of_max);
    orders.push_back(order);
    Json row{{"dt", dts[i]}, {"max_deviation", c.max_deviation}, {"time_of_max", c.time_of_max},
             {"order", std::isfinite(order) ? Json(order) : Json(nullptr)}};
    if (!note.empty()) row["error"] = note;
    rows.push_back(std::move(row));
    fmt::print(log, "{:>12.4e} {:>14.6e} {:>10.4f} {:>8.4f}\n", dts[i], c.max_deviation, c.time_of_max, order);
  }
  write_series_csv(opts.out / "verify.csv", {"dt", "max_deviation", "time_of_max", "order"},
                   {dts, deviations, at_time, orders});
  Json report{{"tolerance", v.tolerance}, {"min_order", v.min_order}, {"fault", v.fault},
              {"pass", pass}, {"rows", std::move(rows)}};
  write_json(opts.out / "verify.json", report);

  Manifest m = start_manifest("verify", file);
  m.resolved = config_to_json(sim.config);
  m.resolved["dts"] = v.dts;
  m.integrator = {{"method", "rk4"}, {"oracle", "kraus"}, {"dts", dts}};
  m.status = {{"state", pass ? "ok" : "failed"}};
  m.outputs = {"verify.csv", "verify.json"};
  finish(opts, m, "manifest.json");
  fmt::print(log, "verify: {}\n", pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitVerify;
}

int run_command(std::string_view name, const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    if (name == "simulate") return cmd_simulate(opts, log);
    if (name == "entropy") return cmd_entropy(opts, log);
    if (name == "sweep") return cmd_sweep(opts, log);
    if (name == "target") return cmd_target(opts, log);
    if (name == "verify") return cmd_verify(opts, log);
    fmt::print(err, "unknown command '{}'\n", name);
    return kExitError;
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const StepDiverged& e) {
    fmt::print(err, "diverged at t = {}: {}\n", e.time(), e.what());
    return kExitDiverged;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  }
}

}  // namespace zeno::app
