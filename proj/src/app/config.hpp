#pragma once

// Flat key = value configuration files with [sections]:
//
//   [simulation]  rabi1, rabi2 (= 2 omega, 1/ns), rabi (both), alpha1, alpha2,
//                 alpha (both), dt, t_final, stride, init, entropy
//   [sweep]       axis, values, observables, workers
//   [target]      mode (single_qubit | two_qubit), a, b, c, d, lambda, omega,
//                 alpha, scale, J
//   [verify]      dts, tolerance, min_order, fault
//
// Keys before the first section header belong to [simulation]. A manifest
// JSON written by a previous run is accepted in place of a config file.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/sweep.hpp"
#include "zeno/target.hpp"

namespace zeno::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  std::filesystem::path path;
  std::string text;  ///< original config text, stored in manifests for replay
};

/// Reads a config file or the config_text of a manifest.json.
ConfigFile load_config(const std::filesystem::path& path);

struct SimulationSettings {
  ZenoConfig config;
  bool entropy = false;
  std::string init = "00";
};

struct TargetSettings {
  enum class Mode { SingleQubit, TwoQubit } mode = Mode::SingleQubit;
  InteractionOperator interaction{0.0, 0.0, 1.0, 0.0};
  double lambda = 3.0;
  double omega = 1.0;  ///< single qubit: H_s = (omega/2) sigma_x, alpha = 2 lambda omega
  double alpha = 1.0;  ///< two qubit dissipator strength
  double scale = 1.0;  ///< two qubit H_s = scale (sz x I + I x sz)
  double coupling = 1.0;  ///< J of the 8x8 interaction Hamiltonian
};

struct VerifySettings {
  std::vector<double> dts{1e-3, 5e-4, 2.5e-4};
  double tolerance = 5e-3;
  /// Minimum observed convergence order log2(err(dt)/err(dt/2)).
  double min_order = 0.9;
  /// "none" or "flipped_z1" (negative control).
  std::string fault = "none";
};

SimulationSettings parse_simulation(const ConfigFile& file);
SweepPlan parse_sweep(const ConfigFile& file);
TargetSettings parse_target(const ConfigFile& file);
VerifySettings parse_verify(const ConfigFile& file);

/// 00 | 01 | 10 | 11 | bloch:(x1,y1,z1,x2,y2,z2) [;e:(e11,...,e33)].
/// Without an e-list the correlators are those of the product state.
GeneralizedState parse_init(std::string_view text);

std::vector<double> parse_list(std::string_view text);

}  // namespace zeno::app
