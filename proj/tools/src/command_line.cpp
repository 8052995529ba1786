#include "liouville/lab/command_line.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "liouville/lab/experiments.hpp"

namespace liouville::lab {

using nlohmann::json;

namespace {

struct SubcommandState {
  Experiment experiment;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = "out";
  std::string format = "csv";
  std::string config_file;
};

json parse_flag_value(const std::string& key, const json& default_value, const std::string& raw) {
  if (default_value.is_string()) return raw;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size() || raw.empty()) {
    throw ConfigError("--" + key + " expects a number, got '" + raw + "'");
  }
  return v;
}

const char* describe(Experiment e) {
  switch (e) {
    case Experiment::HaarCheck: return "SO(3) left-translation Jacobian against the Haar density";
    case Experiment::Classical: return "density transport and pair distances for a 1-dof system";
    case Experiment::Wigner: return "Moyal compressibility of an evolved Wigner function";
    case Experiment::Ergodic: return "orbit occupancy of U^n against the Haar measure";
    case Experiment::Pumping: return "upper-level occupancy series and p_G slice scan";
    case Experiment::Metric: return "group and state distances along U^n";
  }
  return "";
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space and group-space Liouville experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::vector<SubcommandState> states;
  states.reserve(6);
  for (Experiment e : {Experiment::HaarCheck, Experiment::Classical, Experiment::Wigner,
                       Experiment::Ergodic, Experiment::Pumping, Experiment::Metric}) {
    states.push_back({e, nullptr, {}, kDefaultSeed, "out", "csv", {}});
  }
  for (auto& s : states) {
    s.app = app.add_subcommand(std::string(to_string(s.experiment)), describe(s.experiment));
    s.app->add_option("--seed", s.seed, "PRNG seed")->capture_default_str();
    s.app->add_option("--out", s.out_dir, "output directory")->capture_default_str();
    s.app->add_option("--format", s.format, "csv or json")->capture_default_str();
    s.app->add_option("--config", s.config_file, "JSON config; overrides flags");
    const json defaults = RunConfig::default_parameters(s.experiment);
    for (const auto& [key, value] : defaults.items()) {
      s.app->add_option("--" + key, s.values[key], key)->default_str(value.dump());
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (auto& s : states) {
    if (!s.app->parsed()) continue;
    try {
      RunConfig config = RunConfig::defaults(s.experiment);
      config.seed = s.seed;
      config.out_dir = s.out_dir;
      config.format = parse_format(s.format);
      json overrides = json::object();
      for (const auto& [key, raw] : s.values) {
        if (s.app->count("--" + key) == 0) continue;
        overrides[key] = parse_flag_value(key, config.parameters[key], raw);
      }
      config.set_parameters(overrides);
      if (!s.config_file.empty()) config.apply_document(load_config_file(s.config_file));
      if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        config.out_dir = env;
      }
      return run(config, err);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
  }
  return kExitConfig;
}

}  // namespace liouville::lab
