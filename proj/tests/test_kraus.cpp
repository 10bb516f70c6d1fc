#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"
#include "zeno/errors.hpp"
#include "zeno/kraus.hpp"

namespace zeno {
namespace {

double max_entry(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Kraus, UncoupledAncillaLeavesQubitsAlone) {
  const ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.0, 0.0, 0.0);
  EXPECT_LT(max_entry(build_kraus(cfg, 0, 1e-3) - Matrix4c::Identity()), 1e-15);
  EXPECT_LT(max_entry(build_kraus(cfg, 1, 1e-3)), 1e-15);
  // A sigma_y readout of |0>_d splits it evenly.
  const Matrix4c m = build_kraus(cfg, 0, 1e-3, DetectorBasis::SigmaY);
  EXPECT_LT(max_entry(m * m.adjoint() - 0.5 * Matrix4c::Identity()), 1e-15);
}

TEST(Kraus, CompletenessForRandomCouplings) {
  testing::Rng rng(21);
  std::uniform_real_distribution<double> log_dt(-5.0, -1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const ZenoConfig cfg = testing::random_config(rng, 5.0);
    const double dt = std::pow(10.0, log_dt(rng));
    for (auto basis : {DetectorBasis::Computational, DetectorBasis::SigmaY}) {
      EXPECT_LT(max_entry(kraus_completeness(cfg, dt, basis) - Matrix4c::Identity()), 1e-12);
    }
  }
}

TEST(Kraus, InteractionHamiltonianIsHermitian) {
  const ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.5, 2.0);
  const Matrix8c h = interaction_hamiltonian(cfg, 1e-3);
  EXPECT_LT(max_entry(h - h.adjoint()), 1e-15);
}

TEST(Kraus, NoClickProbabilityMatchesFunctional) {
  // tr(M0 rho M0^dag) = 1 + F dt + O(dt^2).
  testing::Rng rng(22);
  const double dt = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const ZenoConfig cfg = testing::random_config(rng, 3.0);
    const Matrix4c rho = testing::random_density(rng);
    const Matrix4c m0 = build_kraus(cfg, 0, dt);
    const double survival = (m0 * rho * m0.adjoint()).trace().real();
    EXPECT_NEAR((survival - 1.0) / dt, log_prob_functional(extract_coordinates(rho), cfg), 1e-4);
  }
}

TEST(Kraus, SigmaYReadoutCarriesNoInformation) {
  testing::Rng rng(23);
  const ZenoConfig cfg = ZenoConfig::from_rabi(0.0, 0.0, 2.0, 2.0);
  const Matrix4c rho = testing::random_density(rng);
  const Matrix4c m0 = build_kraus(cfg, 0, 1e-3, DetectorBasis::SigmaY);
  const Matrix4c m1 = build_kraus(cfg, 1, 1e-3, DetectorBasis::SigmaY);
  EXPECT_NEAR((m0 * rho * m0.adjoint()).trace().real(), 0.5, 1e-12);
  EXPECT_NEAR((m1 * rho * m1.adjoint()).trace().real(), 0.5, 1e-12);
}

TEST(KrausStep, GroundStateIsDark) {
  const ZenoConfig cfg = ZenoConfig::from_rabi(0.0, 0.0, 1.5, 0.5);
  const Matrix4c rho = reconstruct_density(GeneralizedState::basis(0, 0));
  EXPECT_LT(max_entry(kraus_step(rho, cfg, 1e-3) - rho), 1e-15);
}

TEST(KrausStep, UnmonitoredStepIsUnitary) {
  testing::Rng rng(24);
  const ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.0, 0.0);
  const double dt = 1e-2;
  const Matrix4c rho = testing::random_density(rng);
  const Matrix4c h = system_hamiltonian(cfg);
  const Matrix4c u = (Complex(0.0, -dt) * h).exp();
  EXPECT_LT(max_entry(kraus_step(rho, cfg, dt) - u * rho * u.adjoint()), 1e-14);
}

TEST(KrausStep, OutputIsADensity) {
  testing::Rng rng(25);
  const ZenoConfig cfg = testing::random_config(rng, 3.0);
  const KrausChannel channel(cfg, 1e-3);
  Matrix4c rho = testing::random_pure(rng);
  for (int n = 0; n < 1000; ++n) rho = channel.step(rho);
  EXPECT_NO_THROW(validate_density(rho));
}

TEST(KrausStep, DegenerateNormalizationIsReported) {
  // |11> survives with cos^2(2 sqrt(alpha dt)), zero at alpha dt = pi^2/16.
  const double dt = 1e-2, alpha = std::numbers::pi * std::numbers::pi / 16.0 / dt;
  const ZenoConfig cfg = ZenoConfig::from_rabi(0.0, 0.0, alpha, alpha);
  const KrausChannel channel(cfg, dt);
  const Matrix4c rho = reconstruct_density(GeneralizedState::basis(1, 1));
  EXPECT_LT(channel.survival_probability(rho), 1e-14);
  EXPECT_THROW(channel.step(rho), DegenerateNormalization);
}

TEST(Oracle, FigureConfigurationConvergesAtFirstOrder) {
  ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.5, 0.5);
  cfg.t_final = 20.0;
  const auto a = compare_with_oracle(cfg, 1e-3);
  const auto b = compare_with_oracle(cfg, 5e-4);
  const auto c = compare_with_oracle(cfg, 2.5e-4);
  EXPECT_LE(a.max_deviation, 5e-3);
  EXPECT_LT(b.max_deviation, a.max_deviation);
  EXPECT_LT(c.max_deviation, b.max_deviation);
  EXPECT_NEAR(a.max_deviation / b.max_deviation, 2.0, 0.05);
  EXPECT_NEAR(b.max_deviation / c.max_deviation, 2.0, 0.05);
}

TEST(Oracle, UnmonitoredPathsCoincide) {
  ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.0, 0.0);
  cfg.t_final = 20.0;
  EXPECT_LE(compare_with_oracle(cfg, 1e-3).max_deviation, 1e-8);
}

TEST(Oracle, FlippedFixtureIsCaught) {
  ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.5, 0.5);
  cfg.t_final = 20.0;
  double deviation = INFINITY;
  try {
    deviation = compare_with_oracle(cfg, 1e-3, ode_rhs_flipped_z1).max_deviation;
  } catch (const StepDiverged&) {
  }
  EXPECT_GT(deviation, 5e-2);
}

TEST(Oracle, KrausTrajectorySharesTheGrid) {
  ZenoConfig cfg = ZenoConfig::from_rabi(1.0, 1.2, 0.5, 0.5);
  cfg.t_final = 1.0;
  cfg.dt = 1e-3;
  cfg.stride = 250;
  const Trajectory a = kraus_trajectory(cfg);
  const Trajectory b = integrate(cfg);
  EXPECT_EQ(a.times, b.times);
}

}  // namespace
}  // namespace zeno
