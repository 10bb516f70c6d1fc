#pragma once

// Output writers: CSV (UTF-8, comma separated, header row, LF endings,
// 17 significant digits) and JSON with insertion-ordered keys.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zeno/dynamics.hpp"

namespace zeno::app {

using Json = nlohmann::ordered_json;

/// time,x1,y1,z1,x2,y2,z2,e11,...,e33 and optionally S.
std::vector<std::string> trajectory_header(bool with_entropy);

std::string format_number(double value);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          std::span<const double> entropy = {});

void write_series_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

void write_json(const std::filesystem::path& path, const Json& value);

Json config_to_json(const ZenoConfig& cfg);

/// Run manifest: command, resolved config, tool version, timestamp, outputs
/// and integrator settings, plus the config text for replay.
struct Manifest {
  std::string command;
  std::string config_path;
  std::string config_text;
  Json resolved = Json::object();
  Json integrator = Json::object();
  std::vector<std::string> outputs;
  Json status = Json::object();

  Json to_json() const;
};

}  // namespace zeno::app
