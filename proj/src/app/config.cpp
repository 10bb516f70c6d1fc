#include "app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "zeno/errors.hpp"

namespace zeno::app {

namespace {

namespace pt = boost::property_tree;

using Section = std::map<std::string, std::string>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"simulation",
       {"rabi1", "rabi2", "rabi", "alpha1", "alpha2", "alpha", "dt", "t_final", "stride", "init", "entropy"}},
      {"sweep", {"axis", "values", "observables", "workers"}},
      {"target", {"mode", "a", "b", "c", "d", "lambda", "omega", "alpha", "scale", "J"}},
      {"verify", {"dts", "tolerance", "min_order", "fault"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::map<std::string, Section> parse_sections(const ConfigFile& file) {
  // '#' comments are not understood by the INI reader.
  std::istringstream raw(file.text);
  std::ostringstream cleaned;
  for (std::string line; std::getline(raw, line);) {
    cleaned << line.substr(0, line.find('#')) << '\n';
  }
  pt::ptree tree;
  try {
    std::istringstream in(cleaned.str());
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}: line {}: {}", file.path.string(), e.line(), e.message()));
  }

  std::map<std::string, Section> sections;
  for (const auto& [name, node] : tree) {
    if (node.empty() && !known_keys().contains(name)) {
      sections["simulation"][name] = std::string(trim(node.data()));
      continue;
    }
    if (!known_keys().contains(name)) throw ConfigError(fmt::format("unknown section [{}]", name));
    for (const auto& [key, leaf] : node) sections[name][key] = std::string(trim(leaf.data()));
  }
  for (const auto& [name, section] : sections) {
    const auto& allowed = known_keys().at(name);
    for (const auto& [key, value] : section) {
      if (!allowed.contains(key)) throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, name));
    }
  }
  return sections;
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(fmt::format("'{}': expected a number, got '{}'", key, text));
  }
  return value;
}

std::size_t to_size(std::string_view key, std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("'{}': expected a non-negative integer, got '{}'", key, text));
  }
  return value;
}

bool to_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(fmt::format("'{}': expected true or false, got '{}'", key, text));
}

std::optional<std::string> lookup(const std::map<std::string, Section>& sections, const std::string& section,
                                  const std::string& key) {
  const auto s = sections.find(section);
  if (s == sections.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

double get_double(const std::map<std::string, Section>& sections, const std::string& section,
                  const std::string& key, double fallback) {
  const auto v = lookup(sections, section, key);
  return v ? to_double(key, *v) : fallback;
}

std::vector<double> parse_tuple(std::string_view text, std::size_t expected, std::string_view what) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ConfigError(fmt::format("{}: expected a parenthesized list, got '{}'", what, text));
  }
  auto values = parse_list(text.substr(1, text.size() - 2));
  if (values.size() != expected) {
    throw ConfigError(fmt::format("{}: expected {} values, got {}", what, expected, values.size()));
  }
  return values;
}

}  // namespace

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  ConfigFile file{path, buffer.str()};
  if (path.extension() == ".json") {
    try {
      const auto manifest = nlohmann::json::parse(file.text);
      file.text = manifest.at("config_text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(fmt::format("'{}' is not a run manifest: {}", path.string(), e.what()));
    }
  }
  return file;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    out.push_back(to_double("list", text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

GeneralizedState parse_init(std::string_view text) {
  text = trim(text);
  if (text == "00") return GeneralizedState::basis(0, 0);
  if (text == "01") return GeneralizedState::basis(0, 1);
  if (text == "10") return GeneralizedState::basis(1, 0);
  if (text == "11") return GeneralizedState::basis(1, 1);
  if (!text.starts_with("bloch:")) {
    throw ConfigError(fmt::format("init: expected 00|01|10|11|bloch:(...), got '{}'", text));
  }
  text.remove_prefix(6);
  const auto split = text.find(";e:");
  const auto bloch = parse_tuple(text.substr(0, split), 6, "init bloch");
  GeneralizedState s = GeneralizedState::product({bloch[0], bloch[1], bloch[2]}, {bloch[3], bloch[4], bloch[5]});
  if (split != std::string_view::npos) {
    const auto e = parse_tuple(text.substr(split + 3), 9, "init e");
    std::copy(e.begin(), e.end(), s.v.begin() + kE11);
  }
  const double m = min_eigenvalue(reconstruct_density(s));
  if (m < -1e-9) {
    throw ConfigError(fmt::format("init '{}' is not a valid density (eigenvalue {:.3e})", text, m));
  }
  return s;
}

SimulationSettings parse_simulation(const ConfigFile& file) {
  const auto sections = parse_sections(file);
  const std::string sec = "simulation";
  SimulationSettings out;
  ZenoConfig& cfg = out.config;
  const double rabi = get_double(sections, sec, "rabi", 1.0);
  const double alpha = get_double(sections, sec, "alpha", 0.0);
  cfg.omega1 = 0.5 * get_double(sections, sec, "rabi1", rabi);
  cfg.omega2 = 0.5 * get_double(sections, sec, "rabi2", rabi);
  cfg.alpha1 = get_double(sections, sec, "alpha1", alpha);
  cfg.alpha2 = get_double(sections, sec, "alpha2", alpha);
  cfg.dt = get_double(sections, sec, "dt", 1e-4);
  cfg.t_final = get_double(sections, sec, "t_final", 20.0);
  if (const auto v = lookup(sections, sec, "stride")) cfg.stride = to_size("stride", *v);
  if (const auto v = lookup(sections, sec, "init")) out.init = *v;
  if (const auto v = lookup(sections, sec, "entropy")) out.entropy = to_bool("entropy", *v);
  cfg.initial = parse_init(out.init);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return out;
}

SweepPlan parse_sweep(const ConfigFile& file) {
  const auto sections = parse_sections(file);
  SweepPlan plan;
  plan.base = parse_simulation(file).config;
  try {
    if (const auto v = lookup(sections, "sweep", "axis")) plan.axis = parse_sweep_axis(trim(*v));
    if (const auto v = lookup(sections, "sweep", "values")) plan.values = parse_list(*v);
    plan.observables = Observables::parse(lookup(sections, "sweep", "observables").value_or("trajectory"));
    if (const auto v = lookup(sections, "sweep", "workers")) plan.workers = to_size("workers", *v);
    plan.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return plan;
}

TargetSettings parse_target(const ConfigFile& file) {
  const auto sections = parse_sections(file);
  const std::string sec = "target";
  TargetSettings out;
  const std::string mode = lookup(sections, sec, "mode").value_or("single_qubit");
  if (mode == "single_qubit") {
    out.mode = TargetSettings::Mode::SingleQubit;
  } else if (mode == "two_qubit") {
    out.mode = TargetSettings::Mode::TwoQubit;
  } else {
    throw ConfigError(fmt::format("mode: expected single_qubit or two_qubit, got '{}'", mode));
  }
  auto& S = out.interaction;
  S.a = get_double(sections, sec, "a", S.a);
  S.b = get_double(sections, sec, "b", S.b);
  S.c = get_double(sections, sec, "c", S.c);
  S.d = get_double(sections, sec, "d", S.d);
  out.lambda = get_double(sections, sec, "lambda", out.lambda);
  out.omega = get_double(sections, sec, "omega", out.omega);
  out.alpha = get_double(sections, sec, "alpha", out.alpha);
  out.scale = get_double(sections, sec, "scale", out.scale);
  out.coupling = get_double(sections, sec, "J", out.coupling);
  if (!(out.omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(out.alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
  if (!(out.coupling >= 0.0)) throw ConfigError("J must be non-negative");
  return out;
}

VerifySettings parse_verify(const ConfigFile& file) {
  const auto sections = parse_sections(file);
  const std::string sec = "verify";
  VerifySettings out;
  if (const auto v = lookup(sections, sec, "dts")) out.dts = parse_list(*v);
  out.tolerance = get_double(sections, sec, "tolerance", out.tolerance);
  out.min_order = get_double(sections, sec, "min_order", out.min_order);
  if (const auto v = lookup(sections, sec, "fault")) out.fault = std::string(trim(*v));
  if (out.dts.empty()) throw ConfigError("dts must list at least one step size");
  if (std::any_of(out.dts.begin(), out.dts.end(), [](double dt) { return !(dt > 0.0); })) {
    throw ConfigError("dts must be positive");
  }
  if (out.fault != "none" && out.fault != "flipped_z1") {
    throw ConfigError(fmt::format("fault: expected none or flipped_z1, got '{}'", out.fault));
  }
  return out;
}

}  // namespace zeno::app
