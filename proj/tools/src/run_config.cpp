#include "liouville/lab/run_config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <utility>

namespace liouville::lab {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 6> kExperimentNames{{
    {Experiment::HaarCheck, "haar-check"},
    {Experiment::Classical, "classical"},
    {Experiment::Wigner, "wigner"},
    {Experiment::Ergodic, "ergodic"},
    {Experiment::Pumping, "pumping"},
    {Experiment::Metric, "metric"},
}};

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  for (const auto& [k, name] : kExperimentNames)
    if (k == e) return name;
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (const auto& [k, n] : kExperimentNames)
    if (n == name) return k;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("format must be csv or json, got '" + std::string(name) + "'");
}

json RunConfig::default_parameters(Experiment e) {
  switch (e) {
    case Experiment::HaarCheck:
      return {{"samples", 100}, {"step", 1e-5}, {"theta_margin", 0.1}};
    case Experiment::Classical:
      return {{"system", "quartic"}, {"mass", 1.0},      {"omega", 1.0},      {"k2", 1.0},
              {"k4", 0.4},           {"length", 1.0},    {"gravity", 1.0},    {"stiffness", 1.0},
              {"gamma", 0.5},        {"t", 50.0},        {"dt", 1e-3},        {"stride", 100},
              {"ensemble", 64},      {"sigma", 0.25},    {"q0", 1.0},         {"p0", 0.0},
              {"separation", 0.01},  {"fd_step", 1e-5},  {"u_theta", 1.0},    {"u_phi", 0.0},
              {"u_omega", 0.0}};
    case Experiment::Wigner:
      return {{"potential", "quartic"}, {"k2", 1.0},  {"k4", 0.4},      {"mass", 1.0},
              {"omega", 1.0},           {"hbar", 1.0}, {"q0", 1.0},      {"p0", 0.0},
              {"t", 1.0},               {"dt", 2e-5},  {"samples", 20},  {"n", 512},
              {"q_min", -12.0},         {"q_max", 12.0}};
    case Experiment::Ergodic:
      return {{"theta", 1.0}, {"phi", 0.0}, {"omega", 0.0}, {"n", 100000}, {"bins", 20}};
    case Experiment::Pumping:
      return {{"theta", 1.0}, {"phi", 1.0}, {"omega", 0.0}, {"n", 100000}, {"stride", 10}, {"scan_points", 16}};
    case Experiment::Metric:
      return {{"theta", 1.0}, {"phi", 0.3}, {"omega", 0.7},     {"n", 100000},
              {"stride", 1000}, {"k2", 1.0}, {"k4", 0.4},        {"q0", 1.0},
              {"p0", 0.0},    {"separation", 0.01}, {"tau", 1e-3}};
  }
  return json::object();
}

RunConfig RunConfig::defaults(Experiment e) {
  RunConfig c;
  c.experiment = e;
  c.parameters = default_parameters(e);
  return c;
}

void RunConfig::set_parameters(const json& overrides) {
  if (!overrides.is_object()) throw ConfigError("parameters must be a JSON object");
  for (const auto& [key, value] : overrides.items()) {
    if (!parameters.contains(key)) {
      throw ConfigError("unknown parameter '" + key + "' for experiment " +
                        std::string(to_string(experiment)));
    }
    const json& current = parameters[key];
    if (current.is_string() != value.is_string() || !(value.is_string() || value.is_number())) {
      throw ConfigError("parameter '" + key + "' has the wrong type");
    }
    parameters[key] = value;
  }
}

void RunConfig::apply_document(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      if (!value.is_string() || parse_experiment(value.get<std::string>()) != experiment) {
        throw ConfigError("config experiment does not match the subcommand");
      }
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw ConfigError("seed must be an unsigned integer");
      }
      seed = value.get<std::uint64_t>();
    } else if (key == "out_dir") {
      if (!value.is_string()) throw ConfigError("out_dir must be a string");
      out_dir = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw ConfigError("format must be a string");
      format = parse_format(value.get<std::string>());
    } else if (key == "parameters") {
      set_parameters(value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

double RunConfig::number(const std::string& key) const {
  const auto it = parameters.find(key);
  if (it == parameters.end() || !it->is_number()) {
    throw ConfigError("missing numeric parameter '" + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError("parameter '" + key + "' is not finite");
  return v;
}

std::size_t RunConfig::count(const std::string& key) const {
  const double v = number(key);
  if (v < 0.0 || v != std::floor(v) || v > 1e12) {
    throw ConfigError("parameter '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string RunConfig::text(const std::string& key) const {
  const auto it = parameters.find(key);
  if (it == parameters.end() || !it->is_string()) {
    throw ConfigError("missing string parameter '" + key + "'");
  }
  return it->get<std::string>();
}

json RunConfig::to_json() const {
  return {{"experiment", to_string(experiment)},
          {"seed", seed},
          {"out_dir", out_dir.string()},
          {"format", to_string(format)},
          {"parameters", parameters}};
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

}  // namespace liouville::lab
