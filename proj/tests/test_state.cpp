#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"
#include "zeno/errors.hpp"
#include "zeno/state.hpp"

namespace zeno {
namespace {

GeneralizedState with(std::initializer_list<std::pair<Coord, double>> entries) {
  GeneralizedState s;
  for (const auto& [k, v] : entries) s[k] = v;
  return s;
}

double max_entry(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(ReconstructDensity, ZeroCoordinatesGiveMaximallyMixed) {
  const Matrix4c rho = reconstruct_density(GeneralizedState{});
  EXPECT_LT(max_entry(rho - 0.25 * Matrix4c::Identity()), 1e-15);
}

TEST(ReconstructDensity, BellCorrelatorsGiveCornerMatrix) {
  const Matrix4c rho = reconstruct_density(with({{kE11, 1.0}, {kE22, -1.0}, {kE33, 1.0}}));
  Matrix4c expected = Matrix4c::Zero();
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(max_entry(rho - expected), 1e-15);
  EXPECT_EQ(GeneralizedState::bell_phi_plus(), with({{kE11, 1.0}, {kE22, -1.0}, {kE33, 1.0}}));
}

TEST(ReconstructDensity, NorthPolesGiveGroundProjector) {
  const Matrix4c rho = reconstruct_density(with({{kZ1, 1.0}, {kZ2, 1.0}, {kE33, 1.0}}));
  Matrix4c expected = Matrix4c::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LT(max_entry(rho - expected), 1e-15);
}

TEST(ExtractCoordinates, KnownStates) {
  Matrix4c ground = Matrix4c::Zero();
  ground(0, 0) = 1.0;
  EXPECT_EQ(extract_coordinates(ground), GeneralizedState::basis(0, 0));
  EXPECT_EQ(extract_coordinates(0.25 * Matrix4c::Identity()), GeneralizedState{});

  const GeneralizedState bell = extract_coordinates(reconstruct_density(GeneralizedState::bell_phi_plus()));
  EXPECT_NEAR(bell.e(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(bell.e(2, 2), -1.0, 1e-15);
  EXPECT_NEAR(bell.e(3, 3), 1.0, 1e-15);
  EXPECT_NEAR(bell.bloch_radius1(), 0.0, 1e-15);
}

TEST(ExtractCoordinates, RejectsNonHermitianAndWrongTrace) {
  Matrix4c rho = 0.25 * Matrix4c::Identity();
  rho(0, 1) = Complex(0.0, 0.1);
  EXPECT_THROW(extract_coordinates(rho), ValidationError);
  EXPECT_THROW(extract_coordinates(0.5 * Matrix4c::Identity()), ValidationError);
}

TEST(ValidateDensity, RejectsNegativeEigenvalue) {
  // Pure local vectors with zero correlators are not a state.
  const GeneralizedState s = with({{kZ1, 1.0}, {kZ2, 1.0}});
  EXPECT_LT(min_eigenvalue(reconstruct_density(s)), -0.2);
  EXPECT_THROW(validate_density(reconstruct_density(s)), ValidationError);
  EXPECT_NO_THROW(validate_density(reconstruct_density(GeneralizedState::basis(1, 0))));
}

TEST(PartialTrace, Examples) {
  const Matrix2c ground = partial_trace_second(reconstruct_density(GeneralizedState::basis(0, 0)));
  EXPECT_NEAR(std::abs(ground(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ground(1, 1)), 0.0, 1e-15);

  const Matrix2c mixed = partial_trace_second(reconstruct_density(GeneralizedState::bell_phi_plus()));
  EXPECT_LT(max_entry(mixed - 0.5 * Matrix2c::Identity()), 1e-15);
}

TEST(PartialTrace, MatchesFirstBlochVectorForRandomStates) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneralizedState s = extract_coordinates(testing::random_density(rng));
    const Matrix2c expected =
        0.5 * (pauli::sigma(0) + s.x1() * pauli::sigma(1) + s.y1() * pauli::sigma(2) + s.z1() * pauli::sigma(3));
    EXPECT_LT(max_entry(partial_trace_second(reconstruct_density(s)) - expected), 1e-14);
  }
}

TEST(Pauli, ProductsAreTraceOrthogonal) {
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const Complex ip = (pauli::kron(a / 4, a % 4).adjoint() * pauli::kron(b / 4, b % 4)).trace();
      EXPECT_NEAR(std::abs(ip - Complex(a == b ? 4.0 : 0.0)), 0.0, 1e-15) << a << "," << b;
    }
  }
}

TEST(RoundTrip, RandomDensities) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4c rho = trial % 2 ? testing::random_density(rng) : testing::random_pure(rng);
    const GeneralizedState s = extract_coordinates(rho);
    EXPECT_LT(max_entry(reconstruct_density(s) - rho), 1e-12);
    EXPECT_LE(s.bloch_radius1(), 1.0 + 1e-9);
    EXPECT_LE(s.bloch_radius2(), 1.0 + 1e-9);
    EXPECT_GE(min_eigenvalue(reconstruct_density(s)), -1e-9);
  }
}

TEST(Entropy, EigenvalueForm) {
  Matrix2c ground = Matrix2c::Zero();
  ground(0, 0) = 1.0;
  EXPECT_EQ(von_neumann_entropy(ground), 0.0);
  EXPECT_NEAR(von_neumann_entropy(0.5 * Matrix2c::Identity()), std::log(2.0), 1e-15);
  Matrix2c d = Matrix2c::Zero();
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  EXPECT_NEAR(von_neumann_entropy(d), -0.75 * std::log(0.75) - 0.25 * std::log(0.25), 1e-15);
}

TEST(Entropy, BlochRadiusForm) {
  EXPECT_NEAR(entropy_from_bloch_radius(0.0), kLn2, 1e-15);
  EXPECT_EQ(entropy_from_bloch_radius(1.0), 0.0);
  EXPECT_NEAR(entropy_from_bloch_radius(0.5), kLn2 - 0.5 * std::atanh(0.5) - std::log(std::sqrt(0.75)), 1e-15);
  Matrix2c d = Matrix2c::Zero();
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  EXPECT_NEAR(entropy_from_bloch_radius(0.5), von_neumann_entropy(d), 1e-15);
  EXPECT_THROW(entropy_from_bloch_radius(-0.1), InvalidArgument);
  EXPECT_THROW(entropy_from_bloch_radius(1.01), InvalidArgument);
}

TEST(Entropy, FormsAgreeOnRandomStates) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4c rho = trial % 2 ? testing::random_density(rng) : testing::random_pure(rng);
    const double direct = von_neumann_entropy(partial_trace_second(rho));
    const double closed = entropy_from_bloch_radius(std::min(extract_coordinates(rho).bloch_radius1(), 1.0));
    EXPECT_NEAR(direct, closed, 1e-10);
  }
}

}  // namespace
}  // namespace zeno
