#pragma once

// Target-state engineering with continuous measurement: Lindblad right-hand
// sides, design of a single-qubit coupling S = [[a, b + id], [b - id, c]]
// that freezes a chosen Bloch angle, and the two-qubit jump operators whose
// dark states are |00> and |11>.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/kraus.hpp"
#include "zeno/state.hpp"

namespace zeno {

using MatrixXc = Eigen::MatrixXcd;

struct InteractionOperator {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  Matrix2c matrix() const;
};

struct JumpOperator {
  MatrixXc op;
  double alpha = 0.0;
  /// Keep only the anticommutator part and restore the trace:
  /// -(alpha/2){S^dag S, rho} + alpha tr[rho S^dag S] rho.
  bool dissipative_only = false;
};

struct LindbladSystem {
  MatrixXc h_sys;
  std::vector<JumpOperator> jumps;
};

/// Throws DimensionMismatch when rho, h_sys and the jumps disagree in size.
MatrixXc lindblad_rhs(const MatrixXc& rho, const LindbladSystem& sys);

/// Bloch-coordinate equations of one qubit under H_s = (omega/2) sigma_x and
/// the dissipative post-selected coupling S with strength alpha.
BlochVector single_qubit_bloch_rhs(const BlochVector& v, const InteractionOperator& S,
                                   double omega, double alpha);

/// Jacobian of single_qubit_bloch_rhs with respect to (x, y, z).
Eigen::Matrix3d single_qubit_bloch_jacobian(const BlochVector& v, const InteractionOperator& S,
                                            double omega, double alpha);

struct SeedFailure {
  BlochVector seed;
  std::string reason;
};

struct StationaryReport {
  std::vector<BlochVector> roots;  ///< deduplicated within 1e-8
  std::vector<SeedFailure> failures;
};

/// 26 points of the 3x3x3 grid on the unit sphere (directions of the cube
/// neighbours), which include the poles.
std::vector<BlochVector> default_sphere_seeds();

/// Newton iteration from every seed; roots with |RHS| < 1e-12 and |v| <= 1 + 1e-9.
StationaryReport find_stationary(const InteractionOperator& S, double omega, double alpha,
                                 const std::vector<BlochVector>& seeds = default_sphere_seeds());

/// Fixed-step RK4 of single_qubit_bloch_rhs from v0 to t_final.
BlochVector evolve_bloch(const BlochVector& v0, const InteractionOperator& S, double omega, double alpha,
                         double dt, double t_final);

/// Polar-angle rate in the y-z plane (x = 0, y = sin theta, z = cos theta).
/// Throws PlaneLeavingInteraction when b != 0.
double theta_rhs(double theta, const InteractionOperator& S, double omega, double alpha);

/// d(theta_rhs)/d(theta); negative at an attracting frozen angle.
double theta_slope(double theta, const InteractionOperator& S, double alpha);

struct TargetDesign {
  double theta = 0.0;    ///< principal frozen angle, arcsin branch
  double theta_alt = 0.0;  ///< pi - arcsin(.) - xi, the other frozen angle
  double lambda = 0.0;   ///< alpha / (2 omega)
  double xi = 0.0;       ///< atan2(2d, a - c)

  /// (0, sin theta, cos theta).
  BlochVector bloch() const;
  BlochVector bloch_alt() const;
};

/// Frozen angle for coupling S (b = 0) at lambda = alpha/(2 omega).
/// Throws DegenerateInteraction / Infeasible / PlaneLeavingInteraction.
TargetDesign design_target_theta(const InteractionOperator& S, double lambda);

/// |B1><Bj| + |B4><Bj| for j = 2, 3 in the basis |00>, |01>, |10>, |11>.
std::array<Matrix4c, 2> build_two_qubit_jumps();

/// scale * (sz x I + I x sz).
Matrix4c two_qubit_target_hamiltonian(double scale = 1.0);

/// Full-form Lindblad system with the two jumps at strength alpha.
LindbladSystem two_qubit_target_system(double alpha = 1.0, double scale = 1.0);

struct StationarityCheck {
  bool stationary = false;
  double residual = 0.0;  ///< max-entry norm of lindblad_rhs
};

StationarityCheck verify_stationary(const MatrixXc& rho, const LindbladSystem& sys);

/// J sum_{j=2,3} [L_j (x) sigma_d^dag + h.c.] with sigma_d^dag = |1><0|,
/// ancilla as least significant factor.
Matrix8c build_target_interaction_hamiltonian(double J);

}  // namespace zeno
