#pragma once

// Post-selected (no-click) dynamics of two Rabi-driven qubits whose |1>
// populations are weakly monitored through a shared ancilla, in the
// 15-coordinate representation, together with the conjugate-momentum flow
// of the stochastic (CDJ) Hamiltonian built on top of it.
//
// Conventions: hbar = 1, time in ns, frequencies in 1/ns. The system
// Hamiltonian is omega1 sigma_x (x) I + omega2 I (x) sigma_x, so the Rabi
// frequency of qubit k is 2 omega_k.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zeno/state.hpp"

namespace zeno {

struct ZenoConfig {
  double omega1 = 0.5;
  double omega2 = 0.5;
  double alpha1 = 0.0;  ///< measurement strength, alpha = J^2 dt
  double alpha2 = 0.0;
  double dt = 1e-4;       ///< RK4 step, ns
  double t_final = 20.0;  ///< ns
  std::size_t stride = 100;  ///< record every `stride` steps (1 = full resolution)
  GeneralizedState initial = GeneralizedState::basis(0, 0);

  /// Config with Rabi frequencies 2 omega given directly.
  static ZenoConfig from_rabi(double rabi1, double rabi2, double alpha1, double alpha2);

  /// Throws InvalidArgument if alpha < 0, dt <= 0, t_final < dt or stride == 0.
  void validate() const;
  std::size_t num_steps() const;
};

/// Same index layout as Coordinates: p_x1 ... p_e33.
struct ConjugateMomenta {
  Coordinates v{};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  friend bool operator==(const ConjugateMomenta&, const ConjugateMomenta&) = default;
};

/// d/dt of each coordinate, 1/ns.
using CoordinateRates = Coordinates;

/// Pluggable right-hand side, used to inject faults into the oracle check.
using CoordinateRhs = std::function<CoordinateRates(const GeneralizedState&, const ZenoConfig&)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<GeneralizedState> states;
  std::vector<ConjugateMomenta> momenta;  ///< empty unless integrated jointly

  bool has_momenta() const { return !momenta.empty() && momenta.size() == states.size(); }
  std::size_t size() const { return times.size(); }
};

/// Coordinate update equations of the monitored pair.
CoordinateRates ode_rhs(const GeneralizedState& s, const ZenoConfig& cfg);

/// Same as ode_rhs with the cross and alpha2 terms of the z1 line negated.
/// Negative control for the oracle check.
CoordinateRates ode_rhs_flipped_z1(const GeneralizedState& s, const ZenoConfig& cfg);

/// Coefficient of dt in the log no-click probability.
double log_prob_functional(const GeneralizedState& s, const ZenoConfig& cfg);

/// H = p . qdot + F.
double stochastic_hamiltonian(const GeneralizedState& s, const ConjugateMomenta& p,
                              const ZenoConfig& cfg);

/// Hamilton's equations for the momenta, pdot = -dH/dq.
ConjugateMomenta momenta_rhs(const GeneralizedState& s, const ConjugateMomenta& p,
                             const ZenoConfig& cfg);

struct IntegrationFailure {
  double time = 0.0;
  std::string message;
};

/// Trajectory up to the last accepted record plus the failure, if any.
struct IntegrationResult {
  Trajectory trajectory;
  std::optional<IntegrationFailure> failure;
};

/// Non-throwing form of integrate(); `rhs` replaces the coordinate equations
/// when set (coordinate-only runs).
IntegrationResult try_integrate(const ZenoConfig& cfg,
                                const std::optional<ConjugateMomenta>& momenta = std::nullopt,
                                const CoordinateRhs& rhs = {});

/// Fixed-step RK4 from t = 0 to t_final. When `momenta` is given the joint
/// (q, p) system is integrated. Throws StepDiverged when a coordinate leaves
/// [-1 - 1e-6, 1 + 1e-6], a value becomes non-finite, or a recorded state has
/// a density eigenvalue below -1e-6.
Trajectory integrate(const ZenoConfig& cfg,
                     const std::optional<ConjugateMomenta>& momenta = std::nullopt);

/// Coordinate-only integration with a replaced right-hand side.
Trajectory integrate_with(const ZenoConfig& cfg, const CoordinateRhs& rhs);

/// S = integral of (-p . qdot + H) dt, trapezoid rule on the recorded grid.
/// Throws MissingMomenta when the trajectory carries none.
double action_integral(const Trajectory& traj, const ZenoConfig& cfg);

/// Trapezoid integral of F along the recorded states.
double functional_integral(const Trajectory& traj, const ZenoConfig& cfg);

}  // namespace zeno
