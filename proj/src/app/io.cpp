#include "app/io.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>

namespace zeno::app {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

constexpr const char* kCoordNames[kNumCoords] = {"x1",  "y1",  "z1",  "x2",  "y2",  "z2",  "e11", "e12",
                                                 "e13", "e21", "e22", "e23", "e31", "e32", "e33"};

}  // namespace

std::vector<std::string> trajectory_header(bool with_entropy) {
  std::vector<std::string> header{"time"};
  header.insert(header.end(), std::begin(kCoordNames), std::end(kCoordNames));
  if (with_entropy) header.emplace_back("S");
  return header;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          std::span<const double> entropy) {
  const bool with_entropy = !entropy.empty();
  if (with_entropy && entropy.size() != traj.size()) {
    throw std::invalid_argument("entropy series length differs from trajectory");
  }
  auto out = open_output(path);
  out << fmt::format("{}\n", fmt::join(trajectory_header(with_entropy), ","));
  fmt::memory_buffer row;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    row.clear();
    fmt::format_to(std::back_inserter(row), "{:.17g}", traj.times[i]);
    for (double v : traj.states[i].v) fmt::format_to(std::back_inserter(row), ",{:.17g}", v);
    if (with_entropy) fmt::format_to(std::back_inserter(row), ",{:.17g}", entropy[i]);
    row.push_back('\n');
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_series_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("columns differ in length");
  }
  auto out = open_output(path);
  out << fmt::format("{}\n", fmt::join(header, ","));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << (j ? "," : "") << format_number(columns[j][i]);
    }
    out << '\n';
  }
}

void write_json(const std::filesystem::path& path, const Json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
}

Json config_to_json(const ZenoConfig& cfg) {
  Json j;
  j["omega1"] = cfg.omega1;
  j["omega2"] = cfg.omega2;
  j["rabi1"] = 2.0 * cfg.omega1;
  j["rabi2"] = 2.0 * cfg.omega2;
  j["alpha1"] = cfg.alpha1;
  j["alpha2"] = cfg.alpha2;
  j["dt"] = cfg.dt;
  j["t_final"] = cfg.t_final;
  j["stride"] = cfg.stride;
  j["initial"] = cfg.initial.v;
  return j;
}

Json Manifest::to_json() const {
  Json j;
  j["command"] = command;
  j["tool"] = "zeno";
  j["version"] = ZENO_VERSION;
  j["timestamp"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())));
  j["config_path"] = config_path;
  j["config"] = resolved;
  j["integrator"] = integrator;
  j["outputs"] = outputs;
  j["status"] = status;
  j["config_text"] = config_text;
  return j;
}

}  // namespace zeno::app
