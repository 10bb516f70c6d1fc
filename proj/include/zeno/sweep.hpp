#pragma once

// Parameter sweeps over trajectory families and the scalar observables
// extracted from them (entropy series, oscillation period, plateau value,
// dominant frequency).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/dynamics.hpp"

namespace zeno {

/// S(t) of the first qubit's reduced state, per recorded state.
std::vector<double> entropy_series(const Trajectory& traj);

struct PeriodEstimate {
  double period = 0.0;          ///< mean spacing of interpolated minima
  double max_to_max = 0.0;      ///< same for maxima, 0 if fewer than two
  std::vector<double> minima;   ///< interpolated minimum times
};

/// Strict three-point minima refined by a parabola through the neighbours.
std::vector<double> interpolated_minima(std::span<const double> series, std::span<const double> times);
std::vector<double> interpolated_maxima(std::span<const double> series, std::span<const double> times);

/// nullopt (not periodic) with fewer than three minima, when the spacing's
/// relative standard deviation exceeds 10%, or when the trough values spread
/// over more than 10% of the series range.
std::optional<PeriodEstimate> measure_period(std::span<const double> series,
                                             std::span<const double> times);

struct SaturationEstimate {
  double value = 0.0;  ///< mean over the trailing window
  double spread = 0.0; ///< max - min over the trailing window
  double onset = 0.0;  ///< earliest t with max - min on [t, end] below tolerance
};

inline constexpr double kSaturationTolerance = 1e-3;
inline constexpr double kDefaultSaturationWindow = 0.1;

/// nullopt (not saturated) unless max - min over the trailing
/// `window_fraction` of the horizon is below `tolerance`.
std::optional<SaturationEstimate> measure_saturation(std::span<const double> series,
                                                     std::span<const double> times,
                                                     double window_fraction = kDefaultSaturationWindow,
                                                     double tolerance = kSaturationTolerance);

/// Peak of the magnitude spectrum of the mean-removed series (uniform
/// sampling assumed), parabolic-interpolated. Needs at least 64 samples.
double dominant_frequency(std::span<const double> series, std::span<const double> times);

enum class SweepAxis { Alpha1, Alpha2, AlphaBoth, Omega1, Omega2 };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

struct Observables {
  bool trajectory = false;
  bool entropy = false;
  bool saturation = false;
  bool period = false;
  bool dominant_frequency = false;

  static Observables parse(std::string_view comma_separated);
  std::string to_string() const;
};

struct SweepPlan {
  ZenoConfig base;
  SweepAxis axis = SweepAxis::AlphaBoth;
  std::vector<double> values;
  Observables observables;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t workers = 0;

  void validate() const;
};

enum class RunStatus { Ok, Diverged, Failed };

std::string_view to_string(RunStatus status);

struct SweepRecord {
  double value = 0.0;
  ZenoConfig config;
  RunStatus status = RunStatus::Ok;
  std::string diagnostics;
  double failure_time = 0.0;
  std::vector<double> times;  ///< recorded times (kept even without the trajectory)
  std::optional<Trajectory> trajectory;
  std::vector<double> entropy;
  std::optional<SaturationEstimate> saturation;
  std::optional<PeriodEstimate> period;     ///< of the entropy series
  std::optional<PeriodEstimate> z1_period;  ///< of the z1 series
  std::optional<double> dominant_frequency; ///< of the z1 series
};

struct SweepResult {
  std::vector<SweepRecord> records;  ///< one per plan value, same order
};

/// Config obtained by setting `axis` to `value` on `base`.
ZenoConfig apply_axis(const ZenoConfig& base, SweepAxis axis, double value);

/// Evaluates one plan value (integration plus requested observables).
SweepRecord run_point(const SweepPlan& plan, double value);

/// Runs every value on a bounded worker pool. Throws InvalidArgument for an
/// invalid plan; per-value failures land in the record status.
SweepResult run_sweep(const SweepPlan& plan);

}  // namespace zeno
