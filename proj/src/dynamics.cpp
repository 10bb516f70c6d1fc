#include "zeno/dynamics.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kBoxTol = 1e-6;
constexpr double kPhysicalEigTol = 1e-6;

struct Rates {
  double a1, a2, s, w1, w2;

  explicit Rates(const ZenoConfig& cfg)
      : a1(cfg.alpha1),
        a2(cfg.alpha2),
        s(std::sqrt(cfg.alpha1 * cfg.alpha2)),
        w1(cfg.omega1),
        w2(cfg.omega2) {}
};

double dot(const Coordinates& a, const Coordinates& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& x, double h, const std::array<double, N>& k) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + h * k[i];
  return out;
}

template <std::size_t N>
void rk4_combine(std::array<double, N>& x, double dt, const std::array<double, N>& k1,
                 const std::array<double, N>& k2, const std::array<double, N>& k3,
                 const std::array<double, N>& k4) {
  for (std::size_t i = 0; i < N; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Joint phase-space point: q in [0, 15), p in [15, 30).
using PhasePoint = std::array<double, 2 * kNumCoords>;

GeneralizedState q_of(const PhasePoint& x) {
  GeneralizedState s;
  std::copy_n(x.begin(), kNumCoords, s.v.begin());
  return s;
}

ConjugateMomenta p_of(const PhasePoint& x) {
  ConjugateMomenta p;
  std::copy_n(x.begin() + kNumCoords, kNumCoords, p.v.begin());
  return p;
}

PhasePoint joint_rhs(const PhasePoint& x, const ZenoConfig& cfg) {
  const auto s = q_of(x);
  const auto p = p_of(x);
  const auto qdot = ode_rhs(s, cfg);
  const auto pdot = momenta_rhs(s, p, cfg);
  PhasePoint out;
  std::copy(qdot.begin(), qdot.end(), out.begin());
  std::copy(pdot.v.begin(), pdot.v.end(), out.begin() + kNumCoords);
  return out;
}

void check_step(const PhasePoint& x, std::size_t n, double t) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i])) {
      throw StepDiverged(t, fmt::format("non-finite value in component {} at t = {} ns", i, t));
    }
    if (i < kNumCoords && std::abs(x[i]) > 1.0 + kBoxTol) {
      throw StepDiverged(t, fmt::format("coordinate {} = {} left [-1, 1] at t = {} ns", i, x[i], t));
    }
  }
}

void check_physical(const GeneralizedState& s, double t) {
  const double m = min_eigenvalue(reconstruct_density(s));
  if (m < -kPhysicalEigTol) {
    throw StepDiverged(t, fmt::format("density eigenvalue {:.3e} at t = {} ns", m, t));
  }
}

template <typename Rhs>
IntegrationResult run_rk4(const ZenoConfig& cfg, PhasePoint x, std::size_t width, bool joint, Rhs&& rhs) {
  cfg.validate();
  const std::size_t n = cfg.num_steps();
  const double dt = cfg.dt;
  IntegrationResult result;
  Trajectory& traj = result.trajectory;
  const std::size_t expected = n / cfg.stride + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  if (joint) traj.momenta.reserve(expected);

  auto record = [&](std::size_t k) {
    const double t = static_cast<double>(k) * dt;
    const auto s = q_of(x);
    check_physical(s, t);
    traj.times.push_back(t);
    traj.states.push_back(s);
    if (joint) traj.momenta.push_back(p_of(x));
  };

  try {
    check_step(x, width, 0.0);
    record(0);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto k1 = rhs(x);
      const auto k2 = rhs(axpy(x, 0.5 * dt, k1));
      const auto k3 = rhs(axpy(x, 0.5 * dt, k2));
      const auto k4 = rhs(axpy(x, dt, k3));
      rk4_combine(x, dt, k1, k2, k3, k4);
      check_step(x, width, static_cast<double>(k) * dt);
      if (k % cfg.stride == 0 || k == n) record(k);
    }
  } catch (const StepDiverged& e) {
    result.failure = IntegrationFailure{e.time(), e.what()};
  }
  return result;
}

}  // namespace

ZenoConfig ZenoConfig::from_rabi(double rabi1, double rabi2, double alpha1, double alpha2) {
  ZenoConfig cfg;
  cfg.omega1 = 0.5 * rabi1;
  cfg.omega2 = 0.5 * rabi2;
  cfg.alpha1 = alpha1;
  cfg.alpha2 = alpha2;
  return cfg;
}

void ZenoConfig::validate() const {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
    throw InvalidArgument("measurement strengths must be non-negative");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(t_final >= dt)) throw InvalidArgument("t_final must be at least dt");
  if (stride == 0) throw InvalidArgument("stride must be at least 1");
  if (!std::isfinite(omega1) || !std::isfinite(omega2))
    throw InvalidArgument("Rabi frequencies must be finite");
}

std::size_t ZenoConfig::num_steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

CoordinateRates ode_rhs(const GeneralizedState& q, const ZenoConfig& cfg) {
  const Rates r(cfg);
  const double a1 = r.a1, a2 = r.a2, s = r.s, w1 = r.w1, w2 = r.w2;
  const double x1 = q[kX1], y1 = q[kY1], z1 = q[kZ1];
  const double x2 = q[kX2], y2 = q[kY2], z2 = q[kZ2];
  const double e11 = q[kE11], e12 = q[kE12], e13 = q[kE13];
  const double e21 = q[kE21], e22 = q[kE22], e23 = q[kE23];
  const double e31 = q[kE31], e32 = q[kE32], e33 = q[kE33];
  // Recurring combination z1 + z2 - e33 (expectation of 1 - 4 n1 n2 plus locals).
  const double Q = z1 + z2 - e33;

  CoordinateRates d;
  d[kX1] = 0.5 * (-x1 * z1 * a1 + s * (e13 - x1 * Q) + (-x1 * z2 + e13) * a2);
  d[kY1] = 0.5 * (e23 * (s + a2) + y1 * (-a1 * z1 - s * Q - a2 * z2) - 4.0 * w1 * z1);
  d[kZ1] = 0.5 * (a1 * (1.0 - z1 * z1) + s * (1.0 + e33 * (1.0 + z1) - z1 * z1 - z2 - z1 * z2) +
                  a2 * (e33 - z1 * z2) + 4.0 * w1 * y1);
  d[kX2] = 0.5 * (a1 * (-z1 * x2 + e31) + s * (e31 - x2 * Q) + a2 * (-x2 * z2));
  d[kY2] = 0.5 * ((s + a1) * (e32 - z1 * y2) + s * y2 * (-z2 + e33) - a2 * y2 * z2 - 4.0 * w2 * z2);
  d[kZ2] = 0.5 * (a1 * (-z1 * z2 + e33) - s * (1.0 + z2) * (-1.0 + Q) + a2 - a2 * z2 * z2 +
                  4.0 * w2 * y2);
  d[kE11] = 0.5 * (-a1 * e11 * z1 + s * (e22 - e11 * Q) - a2 * z2 * e11);
  d[kE12] = 0.5 * (-a1 * e12 * z1 - s * (e21 + e12 * Q) - a2 * z2 * e12 - 4.0 * w2 * e13);
  d[kE13] = 0.5 * (-a1 * e13 * z1 + s * (x1 - e13 * Q) + a2 * (x1 - z2 * e13) + 4.0 * w2 * e12);
  d[kE21] = 0.5 * (-a1 * e21 * z1 - s * (e12 + e21 * Q) - a2 * z2 * e21 - 4.0 * w1 * e31);
  d[kE22] = 0.5 * (-a1 * e22 * z1 + s * (e11 - e22 * Q) - a2 * z2 * e22 - 4.0 * (w1 * e32 + w2 * e23));
  d[kE23] = 0.5 * (-(a1 + s) * z1 * e23 + s * (-z2 + e33) * e23 - a2 * z2 * e23 + (a2 + s) * y1 +
                   4.0 * (-w1 * e33 + w2 * e22));
  d[kE31] = 0.5 * (a1 * (x2 - e31 * z1) + s * (x2 - e31 * Q) - a2 * z2 * e31 + 4.0 * w1 * e21);
  d[kE32] = 0.5 * ((a1 + s) * y2 + e32 * (-a1 * z1 - s * Q - a2 * z2) + 4.0 * (w1 * e22 - w2 * e33));
  d[kE33] = 0.5 * (a1 * (z2 - z1 * e33) - s * (e33 - 1.0) * (-1.0 + Q) + (z1 - z2 * e33) * a2 +
                   4.0 * (w1 * e23 + w2 * e32));
  return d;
}

CoordinateRates ode_rhs_flipped_z1(const GeneralizedState& q, const ZenoConfig& cfg) {
  auto d = ode_rhs(q, cfg);
  const Rates r(cfg);
  const double z1 = q[kZ1], z2 = q[kZ2], e33 = q[kE33], y1 = q[kY1];
  d[kZ1] = 0.5 * (r.a1 * (1.0 - z1 * z1) - r.s * (1.0 + e33 * (1.0 + z1) - z1 * z1 - z2 - z1 * z2) -
                  r.a2 * (e33 - z1 * z2) + 4.0 * r.w1 * y1);
  return d;
}

double log_prob_functional(const GeneralizedState& q, const ZenoConfig& cfg) {
  const Rates r(cfg);
  return 0.5 * (r.a1 * (q.z1() - 1.0) + r.s * (-1.0 + q.z1() + q.z2() - q.e(3, 3)) +
                r.a2 * (q.z2() - 1.0));
}

double stochastic_hamiltonian(const GeneralizedState& s, const ConjugateMomenta& p,
                              const ZenoConfig& cfg) {
  return dot(p.v, ode_rhs(s, cfg)) + log_prob_functional(s, cfg);
}

ConjugateMomenta momenta_rhs(const GeneralizedState& q, const ConjugateMomenta& p,
                             const ZenoConfig& cfg) {
  const Rates r(cfg);
  const double a1 = r.a1, a2 = r.a2, s = r.s, w1 = r.w1, w2 = r.w2;
  const double x1 = q[kX1], y1 = q[kY1], z1 = q[kZ1];
  const double x2 = q[kX2], y2 = q[kY2], z2 = q[kZ2];
  const double e33 = q[kE33];
  const double px1 = p[kX1], py1 = p[kY1], pz1 = p[kZ1];
  const double px2 = p[kX2], py2 = p[kY2], pz2 = p[kZ2];
  const double pe11 = p[kE11], pe12 = p[kE12], pe13 = p[kE13];
  const double pe21 = p[kE21], pe22 = p[kE22], pe23 = p[kE23];
  const double pe31 = p[kE31], pe32 = p[kE32], pe33 = p[kE33];
  const double Q = z1 + z2 - e33;

  // sum of e_ij p_eij over the eight correlators other than e33
  double ep8 = 0.0;
  for (std::size_t k = kE11; k < kE33; ++k) ep8 += q[k] * p[k];
  const double local = x1 * px1 + y1 * py1 + x2 * px2 + y2 * py2;

  ConjugateMomenta d;
  d[kX1] = 0.5 * (z1 * px1 * a1 + (Q * px1 - pe13) * s + (z2 * px1 - pe13) * a2);
  d[kY1] = 0.5 * (z1 * py1 * a1 + (Q * py1 - pe23) * s + (z2 * py1 - pe23) * a2 - 4.0 * pz1 * w1);
  d[kZ1] = 0.5 * ((-1.0 + local + 2.0 * z1 * pz1 + z2 * pz2 + ep8 + e33 * pe33) * a1 +
                  (-1.0 + local + 2.0 * z1 * pz1 - e33 * pz1 + pz2 + z2 * (pz1 + pz2) + ep8 +
                   (-1.0 + e33) * pe33) * s +
                  z2 * pz1 * a2 - pe33 * a2 + 4.0 * py1 * w1);
  d[kX2] = 0.5 * ((z1 * px2 - pe31) * a1 + (Q * px2 - pe31) * s + z2 * px2 * a2);
  d[kY2] = 0.5 * ((z1 * py2 - pe32) * a1 + (Q * py2 - pe32) * s + z2 * py2 * a2 - 4.0 * pz2 * w2);
  d[kZ2] = 0.5 * (s * (-1.0 + local + pz1 + 2.0 * z2 * pz2 - e33 * pz2 + ep8) +
                  a2 * (-1.0 + local + 2.0 * z2 * pz2 + ep8) +
                  pe33 * (-a1 + (-1.0 + e33) * s + e33 * a2) +
                  z1 * (pz2 * a1 + (pz1 + pz2) * s + pz1 * a2) + 4.0 * py2 * w2);
  d[kE11] = 0.5 * (z1 * pe11 * a1 + (Q * pe11 - pe22) * s + z2 * pe11 * a2);
  d[kE12] = 0.5 * (z1 * pe12 * a1 + (Q * pe12 + pe21) * s + z2 * pe12 * a2 - 4.0 * pe13 * w2);
  d[kE13] = 0.5 * (z1 * pe13 * a1 + (-px1 + Q * pe13) * s - px1 * a2 + z2 * pe13 * a2 + 4.0 * pe12 * w2);
  d[kE21] = 0.5 * (z1 * pe21 * a1 + (pe12 + Q * pe21) * s + z2 * pe21 * a2 - 4.0 * pe31 * w1);
  d[kE22] = 0.5 * (z1 * pe22 * a1 + (-pe11 + Q * pe22) * s + z2 * pe22 * a2 -
                   4.0 * (pe32 * w1 + pe23 * w2));
  d[kE23] = 0.5 * (z1 * pe23 * a1 + (-py1 + Q * pe23) * s - py1 * a2 + z2 * pe23 * a2 -
                   4.0 * pe33 * w1 + 4.0 * pe22 * w2);
  d[kE31] = 0.5 * (-px2 * a1 + z1 * pe31 * a1 + (-px2 + Q * pe31) * s + z2 * pe31 * a2 + 4.0 * pe21 * w1);
  d[kE32] = 0.5 * (-py2 * a1 + z1 * pe32 * a1 + (-py2 + Q * pe32) * s + z2 * pe32 * a2 +
                   4.0 * pe22 * w1 - 4.0 * pe33 * w2);
  d[kE33] = 0.5 * (-pz2 * a1 + z1 * pe33 * a1 +
                   s * (1.0 - local - pz1 - (1.0 + z2) * pz2 - ep8 + z2 * pe33 - 2.0 * e33 * pe33 +
                        z1 * (-pz1 + pe33)) -
                   pz1 * a2 + z2 * pe33 * a2 + 4.0 * pe23 * w1 + 4.0 * pe32 * w2);
  return d;
}

IntegrationResult try_integrate(const ZenoConfig& cfg, const std::optional<ConjugateMomenta>& momenta,
                                const CoordinateRhs& rhs) {
  PhasePoint x{};
  std::copy(cfg.initial.v.begin(), cfg.initial.v.end(), x.begin());
  if (momenta) {
    if (rhs) throw InvalidArgument("a replaced right-hand side cannot be combined with momenta");
    std::copy(momenta->v.begin(), momenta->v.end(), x.begin() + kNumCoords);
    return run_rk4(cfg, x, 2 * kNumCoords, true,
                   [&](const PhasePoint& y) { return joint_rhs(y, cfg); });
  }
  const CoordinateRhs& f = rhs ? rhs : CoordinateRhs(ode_rhs);
  return run_rk4(cfg, x, kNumCoords, false, [&](const PhasePoint& y) {
    PhasePoint out{};
    const auto d = f(q_of(y), cfg);
    std::copy(d.begin(), d.end(), out.begin());
    return out;
  });
}

namespace {
Trajectory unwrap(IntegrationResult&& result) {
  if (result.failure) throw StepDiverged(result.failure->time, result.failure->message);
  return std::move(result.trajectory);
}
}  // namespace

Trajectory integrate(const ZenoConfig& cfg, const std::optional<ConjugateMomenta>& momenta) {
  return unwrap(try_integrate(cfg, momenta));
}

Trajectory integrate_with(const ZenoConfig& cfg, const CoordinateRhs& rhs) {
  return unwrap(try_integrate(cfg, std::nullopt, rhs));
}

double action_integral(const Trajectory& traj, const ZenoConfig& cfg) {
  if (!traj.has_momenta()) throw MissingMomenta("action integral needs a trajectory with momenta");
  auto integrand = [&](std::size_t i) {
    const auto qdot = ode_rhs(traj.states[i], cfg);
    return -dot(traj.momenta[i].v, qdot) + stochastic_hamiltonian(traj.states[i], traj.momenta[i], cfg);
  };
  double total = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    total += 0.5 * (traj.times[i] - traj.times[i - 1]) * (integrand(i - 1) + integrand(i));
  }
  return total;
}

double functional_integral(const Trajectory& traj, const ZenoConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    total += 0.5 * (traj.times[i] - traj.times[i - 1]) *
             (log_prob_functional(traj.states[i - 1], cfg) + log_prob_functional(traj.states[i], cfg));
  }
  return total;
}

}  // namespace zeno
