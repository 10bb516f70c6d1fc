#pragma once

// Microscopic route to the monitored-pair dynamics: every step couples the
// two qubits to a fresh ancilla |0>_d for dt, reads the ancilla out and keeps
// the r = 0 branch. Built from matrix exponentials of the 8x8 system+ancilla
// Hamiltonian, independent of the coordinate equations it is checked against.

#include <Eigen/Dense>

#include "zeno/dynamics.hpp"
#include "zeno/state.hpp"

namespace zeno {

using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

/// Basis the ancilla is projected onto after each coupling window.
enum class DetectorBasis {
  /// sigma_z eigenstates {|0>, |1>}; r = 0 is the no-click outcome.
  Computational,
  /// sigma_y eigenstates {(|0> + i|1>)/sqrt2, (|0> - i|1>)/sqrt2}. With a
  /// sigma_y coupling both outcomes are unitary up to 1/sqrt2 and carry no
  /// information about the qubits.
  SigmaY,
};

/// (J1/2)(I - sz) x I x sy_d + (J2/2) I x (I - sz) x sy_d with J = sqrt(alpha/dt).
/// Ancilla is the least significant tensor factor.
Matrix8c interaction_hamiltonian(const ZenoConfig& cfg, double dt);

/// omega1 sx x I + omega2 I x sx.
Matrix4c system_hamiltonian(const ZenoConfig& cfg);

/// M^r = <r| exp(-i H_int dt) |0>_d for r in {0, 1}.
Matrix4c build_kraus(const ZenoConfig& cfg, int r, double dt,
                     DetectorBasis basis = DetectorBasis::Computational);

/// Sum over r of M^r^dagger M^r (identity for a complete measurement).
Matrix4c kraus_completeness(const ZenoConfig& cfg, double dt,
                            DetectorBasis basis = DetectorBasis::Computational);

/// Post-selected update M^0 U rho U^dagger M^0^dagger / tr[...] with
/// U = exp(-i H_s dt). Precomputes the step operator once.
class KrausChannel {
 public:
  KrausChannel(const ZenoConfig& cfg, double dt,
               DetectorBasis basis = DetectorBasis::Computational);

  /// Throws DegenerateNormalization when the post-selection probability is
  /// below 1e-14.
  Matrix4c step(const Matrix4c& rho) const;

  /// Unnormalized no-click probability tr[A rho A^dagger].
  double survival_probability(const Matrix4c& rho) const;

  const Matrix4c& step_operator() const { return step_; }

 private:
  Matrix4c step_;
};

Matrix4c kraus_step(const Matrix4c& rho, const ZenoConfig& cfg, double dt);

/// Repeated kraus_step from cfg.initial with step cfg.dt, recorded on the same
/// grid integrate() uses (every cfg.stride steps plus the final step).
Trajectory kraus_trajectory(const ZenoConfig& cfg,
                            DetectorBasis basis = DetectorBasis::Computational);

struct OracleComparison {
  double dt = 0.0;
  double max_deviation = 0.0;  ///< max over recorded times and coordinates
  double time_of_max = 0.0;
};

/// Integrates the coordinate equations (or `rhs` if given) and the Kraus
/// channel with step `dt` and reports their largest componentwise gap.
OracleComparison compare_with_oracle(ZenoConfig cfg, double dt, const CoordinateRhs& rhs = {});

}  // namespace zeno
