// wear-bench: runs replicated WEAR benchmark experiments from a JSON config.
//
//   wear-bench run <config.json> [--output-dir DIR] [--seed S] [--replications N] [--parallelism N]
//   wear-bench run --preset experiment1..4|table1-desk [overrides]
//   wear-bench validate <config.json>
//
// Exit codes: 0 success, 1 runtime failure, 2 config error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wear/config.hpp"
#include "wear/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kConfigError = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wear::ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Overrides {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<wear::Index> replications;
  std::optional<wear::Index> parallelism;
};

void report_config_error(const std::string& source, const wear::ConfigError& e) {
  for (const auto& d : e.diagnostics()) std::cerr << source << ": " << d << '\n';
}

std::vector<wear::NamedConfig> resolve(const std::string& config_path, const std::string& preset_name,
                                       const Overrides& o) {
  std::vector<wear::NamedConfig> runs;
  if (!preset_name.empty()) {
    runs = wear::preset(preset_name);
  } else {
    runs.push_back({"config", wear::parse_config(read_text(config_path))});
  }
  for (auto& run : runs) {
    auto& c = run.config;
    if (o.output_dir) c.output_dir = runs.size() == 1 ? *o.output_dir : *o.output_dir + "/" + run.name;
    if (o.seed) c.master_seed = *o.seed;
    if (o.replications) c.replications = *o.replications;
    if (o.parallelism) c.parallelism = *o.parallelism;
    if (auto problems = wear::check_config(c); !problems.empty()) throw wear::ConfigError(std::move(problems));
  }
  return runs;
}

int run_command(const std::string& config_path, const std::string& preset_name, const Overrides& o) {
  const std::string source = preset_name.empty() ? config_path : "preset " + preset_name;
  std::vector<wear::NamedConfig> runs;
  try {
    runs = resolve(config_path, preset_name, o);
  } catch (const wear::ConfigError& e) {
    report_config_error(source, e);
    return kConfigError;
  }
  int status = kOk;
  for (const auto& run : runs) {
    const auto& c = run.config;
    try {
      std::cerr << "running " << run.name << ": " << c.replications << " replications -> " << c.output_dir << '\n';
      const auto result = wear::run_experiment(c);
      wear::write_outputs(c, result, c.output_dir);
      if (result.failure) {
        const auto& f = *result.failure;
        std::cerr << "error: " << f.framework << "/" << f.learner << " failed in replication " << f.replication
                  << ": " << f.message << '\n';
        status = kRuntimeFailure;
      }
    } catch (const wear::ConfigError& e) {
      report_config_error(source, e);
      return kConfigError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << run.name << ": " << e.what() << '\n';
      status = kRuntimeFailure;
    }
  }
  return status;
}

int validate_command(const std::string& config_path) {
  try {
    const auto config = wear::parse_config(read_text(config_path));
    std::cout << wear::echo_config(config);
    return kOk;
  } catch (const wear::ConfigError& e) {
    report_config_error(config_path, e);
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replicated benchmark of expertise-weighted label aggregation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "Run an experiment and write report files");
  run->add_option("config", config_path, "JSON config file");
  run->add_option("--preset", preset_name, "Built-in config: experiment1..experiment4 or table1-desk");
  run->add_option("--output-dir", overrides.output_dir, "Directory for report files");
  run->add_option("--seed", overrides.seed, "Master seed");
  run->add_option("--replications", overrides.replications, "Number of replications");
  run->add_option("--parallelism", overrides.parallelism, "Worker threads across replications");

  auto* validate = app.add_subcommand("validate", "Check a config and print it fully resolved");
  validate->add_option("config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run) {
    if (config_path.empty() == preset_name.empty()) {
      std::cerr << "run: give exactly one of a config file or --preset\n";
      return kConfigError;
    }
    return run_command(config_path, preset_name, overrides);
  }
  return validate_command(config_path);
}
