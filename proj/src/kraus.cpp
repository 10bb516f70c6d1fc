#include "zeno/kraus.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kMinSurvival = 1e-14;

Matrix8c kron(const Matrix4c& a, const Matrix2c& b) {
  Matrix8c out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

// Readout vector <r| as the conjugated ket components.
Eigen::Vector2cd readout_bra(int r, DetectorBasis basis) {
  if (r != 0 && r != 1) throw InvalidArgument(fmt::format("outcome {} not in {{0, 1}}", r));
  const Complex i(0.0, 1.0);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd ket;
  if (basis == DetectorBasis::Computational) {
    ket << (r == 0 ? 1.0 : 0.0), (r == 0 ? 0.0 : 1.0);
  } else {
    ket << h, (r == 0 ? i * h : -i * h);
  }
  return ket.conjugate();
}

}  // namespace

Matrix8c interaction_hamiltonian(const ZenoConfig& cfg, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const double j1 = std::sqrt(cfg.alpha1 / dt);
  const double j2 = std::sqrt(cfg.alpha2 / dt);
  const Matrix2c& id = pauli::sigma(0);
  const Matrix2c& sy = pauli::sigma(2);
  const Matrix2c& sz = pauli::sigma(3);
  const Matrix4c n1 = zeno::kron(Matrix2c(id - sz), id);
  const Matrix4c n2 = zeno::kron(id, Matrix2c(id - sz));
  return 0.5 * j1 * kron(n1, sy) + 0.5 * j2 * kron(n2, sy);
}

Matrix4c system_hamiltonian(const ZenoConfig& cfg) {
  return cfg.omega1 * pauli::kron(1, 0) + cfg.omega2 * pauli::kron(0, 1);
}

Matrix4c build_kraus(const ZenoConfig& cfg, int r, double dt, DetectorBasis basis) {
  const Complex i(0.0, 1.0);
  const Matrix8c evolution = (-i * dt * interaction_hamiltonian(cfg, dt)).exp();
  const Eigen::Vector2cd bra = readout_bra(r, basis);
  Matrix4c m;
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col)
      m(row, col) = bra(0) * evolution(2 * row, 2 * col) + bra(1) * evolution(2 * row + 1, 2 * col);
  return m;
}

Matrix4c kraus_completeness(const ZenoConfig& cfg, double dt, DetectorBasis basis) {
  Matrix4c sum = Matrix4c::Zero();
  for (int r = 0; r < 2; ++r) {
    const Matrix4c m = build_kraus(cfg, r, dt, basis);
    sum += m.adjoint() * m;
  }
  return sum;
}

KrausChannel::KrausChannel(const ZenoConfig& cfg, double dt, DetectorBasis basis) {
  const Complex i(0.0, 1.0);
  const Matrix4c unitary = (-i * dt * system_hamiltonian(cfg)).exp();
  step_ = build_kraus(cfg, 0, dt, basis) * unitary;
}

double KrausChannel::survival_probability(const Matrix4c& rho) const {
  return (step_ * rho * step_.adjoint()).trace().real();
}

Matrix4c KrausChannel::step(const Matrix4c& rho) const {
  Matrix4c next = step_ * rho * step_.adjoint();
  const double p = next.trace().real();
  if (!(p >= kMinSurvival)) {
    throw DegenerateNormalization(fmt::format("post-selection probability {:.3e} vanished", p));
  }
  next /= p;
  // Restore exact Hermiticity lost to roundoff.
  return 0.5 * (next + next.adjoint());
}

Matrix4c kraus_step(const Matrix4c& rho, const ZenoConfig& cfg, double dt) {
  return KrausChannel(cfg, dt).step(rho);
}

Trajectory kraus_trajectory(const ZenoConfig& cfg, DetectorBasis basis) {
  cfg.validate();
  const KrausChannel channel(cfg, cfg.dt, basis);
  const std::size_t n = cfg.num_steps();
  Matrix4c rho = reconstruct_density(cfg.initial);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(pauli_coordinates(rho));
  for (std::size_t k = 1; k <= n; ++k) {
    rho = channel.step(rho);
    if (k % cfg.stride == 0 || k == n) {
      traj.times.push_back(static_cast<double>(k) * cfg.dt);
      traj.states.push_back(pauli_coordinates(rho));
    }
  }
  return traj;
}

OracleComparison compare_with_oracle(ZenoConfig cfg, double dt, const CoordinateRhs& rhs) {
  cfg.dt = dt;
  const Trajectory ode = rhs ? integrate_with(cfg, rhs) : integrate(cfg);
  const Trajectory oracle = kraus_trajectory(cfg);
  OracleComparison result;
  result.dt = dt;
  const std::size_t n = std::min(ode.size(), oracle.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < kNumCoords; ++k) {
      const double gap = std::abs(ode.states[i][k] - oracle.states[i][k]);
      if (gap > result.max_deviation) {
        result.max_deviation = gap;
        result.time_of_max = ode.times[i];
      }
    }
  }
  return result;
}

}  // namespace zeno
