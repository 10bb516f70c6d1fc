#include "zeno/target.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kRootTol = 1e-12;
constexpr double kDedupTol = 1e-8;
constexpr double kBallTol = 1e-9;
constexpr double kStationaryTol = 1e-12;
constexpr int kMaxNewtonIterations = 100;

Eigen::Vector3d as_vec(const BlochVector& v) { return {v.x, v.y, v.z}; }
BlochVector as_bloch(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

MatrixXc anticommutator(const MatrixXc& a, const MatrixXc& b) { return a * b + b * a; }

}  // namespace

Matrix2c InteractionOperator::matrix() const {
  const Complex i(0.0, 1.0);
  Matrix2c m;
  m << a, b + i * d, b - i * d, c;
  return m;
}

MatrixXc lindblad_rhs(const MatrixXc& rho, const LindbladSystem& sys) {
  const Eigen::Index n = rho.rows();
  if (rho.cols() != n || sys.h_sys.rows() != n || sys.h_sys.cols() != n) {
    throw DimensionMismatch(fmt::format("density is {}x{} but H_s is {}x{}", rho.rows(), rho.cols(),
                                        sys.h_sys.rows(), sys.h_sys.cols()));
  }
  const Complex i(0.0, 1.0);
  MatrixXc out = -i * (sys.h_sys * rho - rho * sys.h_sys);
  for (const auto& jump : sys.jumps) {
    if (jump.op.rows() != n || jump.op.cols() != n) {
      throw DimensionMismatch(fmt::format("jump operator is {}x{}, expected {}x{}", jump.op.rows(),
                                          jump.op.cols(), n, n));
    }
    const MatrixXc sds = jump.op.adjoint() * jump.op;
    out -= 0.5 * jump.alpha * anticommutator(sds, rho);
    if (jump.dissipative_only) {
      out += jump.alpha * (rho * sds).trace().real() * rho;
    } else {
      out += jump.alpha * jump.op * rho * jump.op.adjoint();
    }
  }
  return out;
}

BlochVector single_qubit_bloch_rhs(const BlochVector& v, const InteractionOperator& S, double omega,
                                   double alpha) {
  const auto [a, b, c, d] = S;
  const double k = 0.5 * (a + c) * alpha;
  const double u = 2.0 * d * v.y + (-a + c) * v.z;
  return {
      k * (2.0 * b * (v.x * v.x - 1.0) - v.x * u),
      k * (2.0 * d + 2.0 * b * v.x * v.y - v.y * u) - omega * v.z,
      k * (-a + c + 2.0 * b * v.x * v.z - 2.0 * d * v.y * v.z + (a - c) * v.z * v.z) + omega * v.y,
  };
}

Eigen::Matrix3d single_qubit_bloch_jacobian(const BlochVector& v, const InteractionOperator& S,
                                            double omega, double alpha) {
  const auto [a, b, c, d] = S;
  const double k = 0.5 * (a + c) * alpha;
  const double u = 2.0 * d * v.y + (c - a) * v.z;
  Eigen::Matrix3d jac;
  jac << k * (4.0 * b * v.x - u), k * (-2.0 * d * v.x), k * (-(c - a) * v.x),
      k * (2.0 * b * v.y), k * (2.0 * b * v.x - u - 2.0 * d * v.y), k * (-(c - a) * v.y) - omega,
      k * (2.0 * b * v.z), k * (-2.0 * d * v.z) + omega,
      k * (2.0 * b * v.x - 2.0 * d * v.y + 2.0 * (a - c) * v.z);
  return jac;
}

std::vector<BlochVector> default_sphere_seeds() {
  std::vector<BlochVector> seeds;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const double n = std::sqrt(static_cast<double>(i * i + j * j + k * k));
        seeds.push_back({i / n, j / n, k / n});
      }
  return seeds;
}

StationaryReport find_stationary(const InteractionOperator& S, double omega, double alpha,
                                 const std::vector<BlochVector>& seeds) {
  if (seeds.empty()) throw InvalidArgument("find_stationary needs at least one seed");
  StationaryReport report;
  for (const auto& seed : seeds) {
    Eigen::Vector3d v = as_vec(seed);
    bool converged = false;
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const Eigen::Vector3d f = as_vec(single_qubit_bloch_rhs(as_bloch(v), S, omega, alpha));
      if (!f.allFinite()) break;
      if (f.norm() < kRootTol) {
        converged = true;
        break;
      }
      // Minimum-norm step tolerates the singular Jacobians of continuum roots.
      const Eigen::Matrix3d jac = single_qubit_bloch_jacobian(as_bloch(v), S, omega, alpha);
      v -= jac.completeOrthogonalDecomposition().solve(f);
    }
    if (!converged) {
      report.failures.push_back({seed, "Newton iteration did not converge"});
      continue;
    }
    if (v.norm() > 1.0 + kBallTol) {
      report.failures.push_back(
          {seed, fmt::format("root ({}, {}, {}) lies outside the Bloch ball", v(0), v(1), v(2))});
      continue;
    }
    const bool duplicate = std::any_of(report.roots.begin(), report.roots.end(), [&](const BlochVector& r) {
      return (as_vec(r) - v).norm() < kDedupTol;
    });
    if (!duplicate) report.roots.push_back(as_bloch(v));
  }
  return report;
}

BlochVector evolve_bloch(const BlochVector& v0, const InteractionOperator& S, double omega, double alpha,
                         double dt, double t_final) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) {
    throw InvalidArgument(fmt::format("evolve_bloch: need dt > 0 and t_final >= 0, got {} and {}", dt, t_final));
  }
  auto f = [&](const Eigen::Vector3d& v) { return as_vec(single_qubit_bloch_rhs(as_bloch(v), S, omega, alpha)); };
  Eigen::Vector3d v = as_vec(v0);
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  for (std::size_t n = 0; n < steps; ++n) {
    const Eigen::Vector3d k1 = f(v);
    const Eigen::Vector3d k2 = f(v + 0.5 * dt * k1);
    const Eigen::Vector3d k3 = f(v + 0.5 * dt * k2);
    const Eigen::Vector3d k4 = f(v + dt * k3);
    v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return as_bloch(v);
}

double theta_rhs(double theta, const InteractionOperator& S, double omega, double alpha) {
  if (S.b != 0.0) {
    throw PlaneLeavingInteraction(fmt::format("b = {} drives the state out of the y-z plane", S.b));
  }
  const auto [a, b, c, d] = S;
  return -0.5 * (2.0 * omega - (a + c) * alpha * (2.0 * d * std::cos(theta) + (a - c) * std::sin(theta)));
}

double theta_slope(double theta, const InteractionOperator& S, double alpha) {
  if (S.b != 0.0) {
    throw PlaneLeavingInteraction(fmt::format("b = {} drives the state out of the y-z plane", S.b));
  }
  const auto [a, b, c, d] = S;
  return 0.5 * (a + c) * alpha * ((a - c) * std::cos(theta) - 2.0 * d * std::sin(theta));
}

BlochVector TargetDesign::bloch() const { return {0.0, std::sin(theta), std::cos(theta)}; }
BlochVector TargetDesign::bloch_alt() const { return {0.0, std::sin(theta_alt), std::cos(theta_alt)}; }

TargetDesign design_target_theta(const InteractionOperator& S, double lambda) {
  if (S.b != 0.0) {
    throw PlaneLeavingInteraction(fmt::format("b = {} drives the state out of the y-z plane", S.b));
  }
  if (!(lambda > 0.0)) throw InvalidArgument(fmt::format("lambda = {} must be positive", lambda));
  const auto [a, b, c, d] = S;
  const double radius = std::sqrt(4.0 * d * d + (a - c) * (a - c));
  if (a + c == 0.0 || radius == 0.0) {
    throw DegenerateInteraction(
        fmt::format("a + c = {} and sqrt(4d^2 + (a-c)^2) = {}: no measurement drift", a + c, radius));
  }
  const double arg = 1.0 / (lambda * (a + c) * radius);
  if (std::abs(arg) > 1.0) {
    throw Infeasible(fmt::format("no frozen angle at lambda = {} (needs |{}| <= 1)", lambda, arg));
  }
  TargetDesign design;
  design.lambda = lambda;
  design.xi = std::atan2(2.0 * d, a - c);
  const double principal = std::asin(arg);
  design.theta = std::remainder(principal - design.xi, 2.0 * std::numbers::pi);
  design.theta_alt = std::remainder(std::numbers::pi - principal - design.xi, 2.0 * std::numbers::pi);
  return design;
}

std::array<Matrix4c, 2> build_two_qubit_jumps() {
  std::array<Matrix4c, 2> jumps;
  for (int k = 0; k < 2; ++k) {
    const int j = k + 1;  // zero-based index of B2, B3
    jumps[k] = Matrix4c::Zero();
    jumps[k](0, j) = 1.0;
    jumps[k](3, j) = 1.0;
  }
  return jumps;
}

Matrix4c two_qubit_target_hamiltonian(double scale) {
  return scale * (pauli::kron(3, 0) + pauli::kron(0, 3));
}

LindbladSystem two_qubit_target_system(double alpha, double scale) {
  LindbladSystem sys;
  sys.h_sys = two_qubit_target_hamiltonian(scale);
  for (const auto& jump : build_two_qubit_jumps()) sys.jumps.push_back({jump, alpha, false});
  return sys;
}

StationarityCheck verify_stationary(const MatrixXc& rho, const LindbladSystem& sys) {
  StationarityCheck check;
  check.residual = lindblad_rhs(rho, sys).cwiseAbs().maxCoeff();
  check.stationary = check.residual < kStationaryTol;
  return check;
}

Matrix8c build_target_interaction_hamiltonian(double J) {
  if (!(J >= 0.0)) throw InvalidArgument(fmt::format("coupling J = {} must be non-negative", J));
  Matrix2c raise = Matrix2c::Zero();  // sigma_d^dagger = |1><0|
  raise(1, 0) = 1.0;
  const Matrix2c lower = raise.adjoint();
  Matrix8c h = Matrix8c::Zero();
  for (const auto& jump : build_two_qubit_jumps()) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        h.block<2, 2>(2 * r, 2 * c) += J * (jump(r, c) * raise + std::conj(jump(c, r)) * lower);
      }
  }
  return h;
}

}  // namespace zeno
