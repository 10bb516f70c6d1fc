#pragma once

// Random draws shared by the property tests and the acceptance runner.

#include <random>

#include "zeno/dynamics.hpp"
#include "zeno/state.hpp"

namespace zeno::testing {

using Rng = std::mt19937_64;

/// G G^dagger / tr with G complex Ginibre: full-rank mixed states.
inline Matrix4c random_density(Rng& rng) {
  std::normal_distribution<double> n;
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  Matrix4c rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline Matrix4c random_pure(Rng& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix<Complex, 4, 1> psi;
  for (int i = 0; i < 4; ++i) psi(i) = Complex(n(rng), n(rng));
  psi.normalize();
  return psi * psi.adjoint();
}

inline ConjugateMomenta random_momenta(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ConjugateMomenta p;
  for (auto& v : p.v) v = n(rng);
  return p;
}

/// Rabi frequencies in [0.5, 1.5] and strengths in [0, alpha_max].
inline ZenoConfig random_config(Rng& rng, double alpha_max) {
  std::uniform_real_distribution<double> rabi(0.5, 1.5), alpha(0.0, alpha_max);
  ZenoConfig cfg = ZenoConfig::from_rabi(rabi(rng), rabi(rng), alpha(rng), alpha(rng));
  return cfg;
}

inline double max_abs_diff(const Coordinates& a, const Coordinates& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const Coordinates& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace zeno::testing
