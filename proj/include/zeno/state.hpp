#pragma once

// Two-qubit state algebra: Pauli tables, the 15-coordinate parameterization
// of a 4x4 density, reduced states and entanglement entropy (in nats).

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Index of each generalized coordinate in the flat 15-vector.
enum Coord : std::size_t {
  kX1, kY1, kZ1, kX2, kY2, kZ2,
  kE11, kE12, kE13, kE21, kE22, kE23, kE31, kE32, kE33,
};
inline constexpr std::size_t kNumCoords = 15;

using Coordinates = std::array<double, kNumCoords>;

/// Index of e_ij (i, j in 1..3) in the flat vector.
constexpr std::size_t e_index(int i, int j) {
  return kE11 + static_cast<std::size_t>(3 * (i - 1) + (j - 1));
}

/// Local Bloch vectors (x1,y1,z1), (x2,y2,z2) and the nine correlators
/// e_ij = tr[rho (sigma_i x sigma_j)].
struct GeneralizedState {
  Coordinates v{};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  double x1() const { return v[kX1]; }
  double y1() const { return v[kY1]; }
  double z1() const { return v[kZ1]; }
  double x2() const { return v[kX2]; }
  double y2() const { return v[kY2]; }
  double z2() const { return v[kZ2]; }
  double e(int i, int j) const { return v[e_index(i, j)]; }

  double bloch_radius1() const;
  double bloch_radius2() const;

  /// Computational basis product state |ab>, a,b in {0,1}.
  static GeneralizedState basis(int a, int b);
  /// (|00> + |11>)/sqrt(2).
  static GeneralizedState bell_phi_plus();
  /// Product of two Bloch vectors: e_ij = r1_i r2_j.
  static GeneralizedState product(const std::array<double, 3>& r1,
                                  const std::array<double, 3>& r2);

  friend bool operator==(const GeneralizedState&, const GeneralizedState&) = default;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

namespace pauli {
/// sigma_0 = I, then sigma_x, sigma_y, sigma_z.
const Matrix2c& sigma(int k);
/// sigma_i (x) sigma_j with i, j in 0..3.
Matrix4c kron(int i, int j);
}  // namespace pauli

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

/// rho = (1/4)[I + rho1 x I + I x rho2 + sum e_ij sigma_i x sigma_j].
Matrix4c reconstruct_density(const GeneralizedState& s);

/// Inverse of reconstruct_density via Pauli traces. Throws ValidationError
/// when rho is not Hermitian or not unit trace (tolerance 1e-12).
GeneralizedState extract_coordinates(const Matrix4c& rho);

/// Pauli traces without validation; used on integrator iterates.
GeneralizedState pauli_coordinates(const Matrix4c& rho);

/// Trace over the second qubit.
Matrix2c partial_trace_second(const Matrix4c& rho);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix4c& rho);

/// Checks Hermiticity and unit trace (1e-12) and eigenvalues >= -1e-9.
/// Throws ValidationError describing the first failure.
void validate_density(const Matrix4c& rho);
void validate_density(const Matrix2c& rho);

/// -sum lambda log lambda of a 2x2 density. Eigenvalues come from the closed
/// form (1 +- r)/2; values in [-1e-9, 0) are clamped, lower ones throw.
double von_neumann_entropy(const Matrix2c& rho);

/// ln 2 - r artanh(r) - ln sqrt(1 - r^2), with the r -> 1 limit 0.
double entropy_from_bloch_radius(double r1);

inline constexpr double kLn2 = 0.69314718055994530942;

}  // namespace zeno
