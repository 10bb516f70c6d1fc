#include "zeno/state.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kMatrixTol = 1e-12;
constexpr double kNegativeEigTol = 1e-9;

const std::array<Matrix2c, 4>& pauli_table() {
  static const std::array<Matrix2c, 4> table = [] {
    const Complex i(0.0, 1.0);
    std::array<Matrix2c, 4> t;
    t[0] << 1, 0, 0, 1;
    t[1] << 0, 1, 1, 0;
    t[2] << 0, -i, i, 0;
    t[3] << 1, 0, 0, -1;
    return t;
  }();
  return table;
}

template <typename M>
double hermiticity_defect(const M& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double clamped_entropy_term(double lambda) {
  if (lambda < -kNegativeEigTol) {
    throw ValidationError(fmt::format("negative eigenvalue {:.3e} in entropy", lambda));
  }
  if (lambda <= 0.0) return 0.0;
  return -lambda * std::log(lambda);
}

}  // namespace

double GeneralizedState::bloch_radius1() const {
  return std::sqrt(x1() * x1() + y1() * y1() + z1() * z1());
}

double GeneralizedState::bloch_radius2() const {
  return std::sqrt(x2() * x2() + y2() * y2() + z2() * z2());
}

GeneralizedState GeneralizedState::basis(int a, int b) {
  const double z1 = a == 0 ? 1.0 : -1.0;
  const double z2 = b == 0 ? 1.0 : -1.0;
  return product({0.0, 0.0, z1}, {0.0, 0.0, z2});
}

GeneralizedState GeneralizedState::bell_phi_plus() {
  GeneralizedState s;
  s[kE11] = 1.0;
  s[kE22] = -1.0;
  s[kE33] = 1.0;
  return s;
}

GeneralizedState GeneralizedState::product(const std::array<double, 3>& r1,
                                           const std::array<double, 3>& r2) {
  GeneralizedState s;
  for (int k = 0; k < 3; ++k) {
    s[kX1 + k] = r1[k];
    s[kX2 + k] = r2[k];
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) s[e_index(i, j)] = r1[i - 1] * r2[j - 1];
  return s;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace pauli {

const Matrix2c& sigma(int k) { return pauli_table().at(static_cast<std::size_t>(k)); }

Matrix4c kron(int i, int j) { return zeno::kron(sigma(i), sigma(j)); }

}  // namespace pauli

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

Matrix4c reconstruct_density(const GeneralizedState& s) {
  Matrix4c rho = pauli::kron(0, 0);
  for (int k = 1; k <= 3; ++k) {
    rho += s[kX1 + k - 1] * pauli::kron(k, 0);
    rho += s[kX2 + k - 1] * pauli::kron(0, k);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) rho += s.e(i, j) * pauli::kron(i, j);
  return 0.25 * rho;
}

GeneralizedState pauli_coordinates(const Matrix4c& rho) {
  GeneralizedState s;
  auto tr = [&](int i, int j) { return (rho * pauli::kron(i, j)).trace().real(); };
  for (int k = 1; k <= 3; ++k) {
    s[kX1 + k - 1] = tr(k, 0);
    s[kX2 + k - 1] = tr(0, k);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) s[e_index(i, j)] = tr(i, j);
  return s;
}

GeneralizedState extract_coordinates(const Matrix4c& rho) {
  if (const double h = hermiticity_defect(rho); h > kMatrixTol) {
    throw ValidationError(fmt::format("density is not Hermitian (defect {:.3e})", h));
  }
  if (const double t = std::abs(rho.trace() - 1.0); t > kMatrixTol) {
    throw ValidationError(fmt::format("density trace differs from 1 by {:.3e}", t));
  }
  return pauli_coordinates(rho);
}

Matrix2c partial_trace_second(const Matrix4c& rho) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  return out;
}

double min_eigenvalue(const Matrix4c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void validate_density(const Matrix4c& rho) {
  if (const double h = hermiticity_defect(rho); h > kMatrixTol)
    throw ValidationError(fmt::format("density is not Hermitian (defect {:.3e})", h));
  if (const double t = std::abs(rho.trace() - 1.0); t > kMatrixTol)
    throw ValidationError(fmt::format("density trace differs from 1 by {:.3e}", t));
  if (const double m = min_eigenvalue(rho); m < -kNegativeEigTol)
    throw ValidationError(fmt::format("density has eigenvalue {:.3e}", m));
}

void validate_density(const Matrix2c& rho) {
  if (const double h = hermiticity_defect(rho); h > kMatrixTol)
    throw ValidationError(fmt::format("density is not Hermitian (defect {:.3e})", h));
  if (const double t = std::abs(rho.trace() - 1.0); t > kMatrixTol)
    throw ValidationError(fmt::format("density trace differs from 1 by {:.3e}", t));
}

double von_neumann_entropy(const Matrix2c& rho) {
  validate_density(rho);
  const Eigen::SelfAdjointEigenSolver<Matrix2c> eig(rho, Eigen::EigenvaluesOnly);
  return clamped_entropy_term(eig.eigenvalues()(0)) + clamped_entropy_term(eig.eigenvalues()(1));
}

double entropy_from_bloch_radius(double r1) {
  if (!(r1 >= 0.0) || r1 > 1.0 + kNegativeEigTol) {
    throw InvalidArgument(fmt::format("Bloch radius {} outside [0, 1]", r1));
  }
  if (r1 >= 1.0) return 0.0;
  return kLn2 - r1 * std::atanh(r1) - 0.5 * std::log((1.0 - r1) * (1.0 + r1));
}

}  // namespace zeno
