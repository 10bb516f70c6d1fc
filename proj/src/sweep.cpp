#include "zeno/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>
#include <unsupported/Eigen/FFT>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kMaxSpacingSpread = 0.10;
// Troughs must repeat: a drifting envelope is not a periodic signal.
constexpr double kMaxTroughDrift = 0.10;
constexpr std::size_t kMinSpectrumSamples = 64;

void check_lengths(std::span<const double> series, std::span<const double> times) {
  if (series.size() != times.size()) {
    throw InvalidArgument(
        fmt::format("series has {} samples but times has {}", series.size(), times.size()));
  }
}

// Vertex abscissa of the parabola through three equally spaced samples,
// as an offset in units of the spacing from the middle one.
double parabola_offset(double left, double mid, double right) {
  const double curvature = left - 2.0 * mid + right;
  if (curvature == 0.0) return 0.0;
  return 0.5 * (left - right) / curvature;
}

template <typename Better>
std::vector<double> interpolated_extrema(std::span<const double> series, std::span<const double> times,
                                         Better better) {
  check_lengths(series, times);
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (better(series[i], series[i - 1]) && better(series[i], series[i + 1])) {
      const double offset = parabola_offset(series[i - 1], series[i], series[i + 1]);
      const double h = offset >= 0.0 ? times[i + 1] - times[i] : times[i] - times[i - 1];
      out.push_back(times[i] + offset * h);
    }
  }
  return out;
}

std::pair<double, double> spacing_stats(const std::vector<double>& marks) {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < marks.size(); ++i) gaps.push_back(marks[i] - marks[i - 1]);
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());
  return {mean, std::sqrt(var)};
}

std::vector<double> column(const Trajectory& traj, std::size_t k) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.states) out.push_back(s[k]);
  return out;
}

}  // namespace

std::vector<double> entropy_series(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.states) {
    out.push_back(entropy_from_bloch_radius(std::min(s.bloch_radius1(), 1.0)));
  }
  return out;
}

std::vector<double> interpolated_minima(std::span<const double> series, std::span<const double> times) {
  return interpolated_extrema(series, times, std::less<>{});
}

std::vector<double> interpolated_maxima(std::span<const double> series, std::span<const double> times) {
  return interpolated_extrema(series, times, std::greater<>{});
}

std::optional<PeriodEstimate> measure_period(std::span<const double> series,
                                             std::span<const double> times) {
  PeriodEstimate estimate;
  estimate.minima = interpolated_minima(series, times);
  if (estimate.minima.size() < 3) return std::nullopt;
  const auto [mean, spread] = spacing_stats(estimate.minima);
  if (!(mean > 0.0) || spread > kMaxSpacingSpread * mean) return std::nullopt;

  std::vector<double> troughs;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (series[i] < series[i - 1] && series[i] < series[i + 1]) troughs.push_back(series[i]);
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const auto [t_lo, t_hi] = std::minmax_element(troughs.begin(), troughs.end());
  if (*t_hi - *t_lo > kMaxTroughDrift * (*hi - *lo)) return std::nullopt;
  estimate.period = mean;
  const auto maxima = interpolated_maxima(series, times);
  if (maxima.size() >= 2) estimate.max_to_max = spacing_stats(maxima).first;
  return estimate;
}

std::optional<SaturationEstimate> measure_saturation(std::span<const double> series,
                                                     std::span<const double> times,
                                                     double window_fraction, double tolerance) {
  check_lengths(series, times);
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
    throw InvalidArgument(fmt::format("window fraction {} not in (0, 1)", window_fraction));
  }
  if (series.empty()) return std::nullopt;
  const double t0 = times.front();
  const double t_end = times.back();
  const double cut = t_end - window_fraction * (t_end - t0);
  const auto first = static_cast<std::size_t>(
      std::lower_bound(times.begin(), times.end(), cut) - times.begin());
  const auto window = series.subspan(first);
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  SaturationEstimate estimate;
  estimate.spread = *hi - *lo;
  if (!(estimate.spread < tolerance)) return std::nullopt;
  estimate.value = std::accumulate(window.begin(), window.end(), 0.0) / static_cast<double>(window.size());

  // Walk backwards while the running range over [t, end] stays below tolerance.
  double run_lo = series.back(), run_hi = series.back();
  std::size_t onset = series.size() - 1;
  for (std::size_t i = series.size(); i-- > 0;) {
    run_lo = std::min(run_lo, series[i]);
    run_hi = std::max(run_hi, series[i]);
    if (!(run_hi - run_lo < tolerance)) break;
    onset = i;
  }
  estimate.onset = times[onset];
  return estimate;
}

double dominant_frequency(std::span<const double> series, std::span<const double> times) {
  check_lengths(series, times);
  if (series.size() < kMinSpectrumSamples) {
    throw InvalidArgument(fmt::format("dominant_frequency needs at least {} samples, got {}",
                                      kMinSpectrumSamples, series.size()));
  }
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());

  // Zero padding refines the frequency grid before interpolation.
  std::size_t n = 1;
  while (n < 8 * series.size()) n <<= 1;
  std::vector<double> padded(n, 0.0);
  for (std::size_t i = 0; i < series.size(); ++i) padded[i] = series[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, padded);
  const std::size_t half = n / 2;
  std::size_t peak = 1;
  for (std::size_t k = 1; k < half; ++k) {
    if (std::abs(spectrum[k]) > std::abs(spectrum[peak])) peak = k;
  }
  double bin = static_cast<double>(peak);
  if (peak > 0 && peak + 1 < half) {
    bin += parabola_offset(std::abs(spectrum[peak - 1]), std::abs(spectrum[peak]), std::abs(spectrum[peak + 1]));
  }
  return bin / (static_cast<double>(n) * h);
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Alpha1: return "alpha1";
    case SweepAxis::Alpha2: return "alpha2";
    case SweepAxis::AlphaBoth: return "alpha_both";
    case SweepAxis::Omega1: return "omega1";
    case SweepAxis::Omega2: return "omega2";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto axis : {SweepAxis::Alpha1, SweepAxis::Alpha2, SweepAxis::AlphaBoth, SweepAxis::Omega1,
                    SweepAxis::Omega2}) {
    if (to_string(axis) == name) return axis;
  }
  throw InvalidArgument(fmt::format("unknown sweep axis '{}'", name));
}

Observables Observables::parse(std::string_view comma_separated) {
  Observables obs;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const std::size_t end = std::min(comma_separated.find(',', pos), comma_separated.size());
    std::string_view item = comma_separated.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "trajectory") obs.trajectory = true;
    else if (item == "entropy") obs.entropy = true;
    else if (item == "saturation") obs.saturation = true;
    else if (item == "period") obs.period = true;
    else if (item == "dominant_frequency") obs.dominant_frequency = true;
    else if (!item.empty()) throw InvalidArgument(fmt::format("unknown observable '{}'", item));
    pos = end + 1;
  }
  return obs;
}

std::string Observables::to_string() const {
  std::vector<std::string_view> names;
  if (trajectory) names.push_back("trajectory");
  if (entropy) names.push_back("entropy");
  if (saturation) names.push_back("saturation");
  if (period) names.push_back("period");
  if (dominant_frequency) names.push_back("dominant_frequency");
  return fmt::format("{}", fmt::join(names, ","));
}

void SweepPlan::validate() const {
  if (values.empty()) throw InvalidArgument("sweep plan has no values");
  base.validate();
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::Failed: return "failed";
  }
  return "unknown";
}

ZenoConfig apply_axis(const ZenoConfig& base, SweepAxis axis, double value) {
  ZenoConfig cfg = base;
  switch (axis) {
    case SweepAxis::Alpha1: cfg.alpha1 = value; break;
    case SweepAxis::Alpha2: cfg.alpha2 = value; break;
    case SweepAxis::AlphaBoth: cfg.alpha1 = cfg.alpha2 = value; break;
    case SweepAxis::Omega1: cfg.omega1 = value; break;
    case SweepAxis::Omega2: cfg.omega2 = value; break;
  }
  return cfg;
}

SweepRecord run_point(const SweepPlan& plan, double value) {
  SweepRecord rec;
  rec.value = value;
  rec.config = apply_axis(plan.base, plan.axis, value);
  try {
    Trajectory traj = integrate(rec.config);
    rec.times = traj.times;
    const auto& obs = plan.observables;
    if (obs.entropy || obs.saturation || obs.period) rec.entropy = entropy_series(traj);
    if (obs.saturation) rec.saturation = measure_saturation(rec.entropy, traj.times);
    if (obs.period) {
      rec.period = measure_period(rec.entropy, traj.times);
      rec.z1_period = measure_period(column(traj, kZ1), traj.times);
    }
    if (obs.dominant_frequency && traj.size() >= kMinSpectrumSamples) {
      rec.dominant_frequency = dominant_frequency(column(traj, kZ1), traj.times);
    }
    if (obs.trajectory) rec.trajectory = std::move(traj);
    if (!obs.entropy && !obs.trajectory) rec.entropy.clear();
  } catch (const StepDiverged& e) {
    rec.status = RunStatus::Diverged;
    rec.diagnostics = e.what();
    rec.failure_time = e.time();
  } catch (const std::exception& e) {
    rec.status = RunStatus::Failed;
    rec.diagnostics = e.what();
  }
  return rec;
}

SweepResult run_sweep(const SweepPlan& plan) {
  plan.validate();
  SweepResult result;
  result.records.resize(plan.values.size());
  std::size_t workers = plan.workers == 0 ? std::thread::hardware_concurrency() : plan.workers;
  workers = std::clamp<std::size_t>(workers, 1, plan.values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < plan.values.size(); i = next.fetch_add(1)) {
      result.records[i] = run_point(plan, plan.values[i]);
    }
  };
  if (workers == 1) {
    worker();
    return result;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();  // joins
  return result;
}

}  // namespace zeno
