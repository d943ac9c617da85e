#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pprad/scenario.hpp"

using namespace pprad;

namespace {

int default_threads() {
  if (const char* env = std::getenv("PPRAD_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return 1;
}

int config_error(const std::string& msg) {
  std::cerr << cli::error_json("Config", msg, cli::kExitConfig).dump() << "\n";
  return cli::kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-particle heat radiation and transfer in structured environments"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_path;
  cli::RunOptions opts;
  opts.threads = default_threads();
  double tolerance = 0.0;

  auto* run = app.add_subcommand("run", "run a scenario and write CSV");
  auto* validate = app.add_subcommand("validate", "check a scenario and print a JSON report");
  auto* presets = app.add_subcommand("presets", "list built-in presets");
  for (auto* sub : {run, validate}) {
    auto* cfg = sub->add_option("--config", config_path, "scenario JSON file");
    auto* pre = sub->add_option("--preset", preset_name, "built-in preset name");
    cfg->excludes(pre);
  }
  run->add_option("--out", out_path, "CSV output path (default stdout)");
  run->add_option("--threads", opts.threads, "worker threads (default $PPRAD_THREADS or 1)")->check(CLI::PositiveNumber);
  auto* tol = run->add_option("--tolerance", tolerance, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  run->add_flag("--reproducible", opts.reproducible, "write 0 in the wall-time column");
  validate->add_option("--out", out_path, "report output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return cli::kExitConfig;
  }

  if (presets->parsed()) {
    for (const auto& p : cli::preset_list()) std::cout << p.name << "\t" << p.description << "\n";
    return 0;
  }

  if (*tol) opts.tolerance = tolerance;

  cli::ScenarioConfig config;
  std::optional<cli::Json> raw;
  try {
    if (!preset_name.empty()) {
      config = cli::preset(preset_name);
    } else if (!config_path.empty()) {
      if (validate->parsed()) {
        std::ifstream in(config_path);
        if (!in) return config_error("cannot open config file '" + config_path + "'");
        try {
          raw = cli::Json::parse(in);
        } catch (const cli::Json::exception& e) {
          raw = cli::Json();
          cli::ValidationReport rep;
          rep.entries.push_back({"schema", materials::Verdict::Fail, std::string("not valid JSON: ") + e.what()});
          std::cout << rep.to_json().dump(2) << "\n";
          return 0;
        }
      } else {
        config = cli::load_config(config_path);
      }
    } else {
      return config_error("give --config <path> or --preset <name>");
    }
  } catch (const Error& e) {
    return config_error(e.what());
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) return config_error("cannot open output '" + out_path + "'");
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  if (validate->parsed()) {
    const auto rep = raw ? cli::validate(*raw) : cli::validate(config);
    out << rep.to_json().dump(2) << "\n";
    return 0;
  }
  if (out_path.empty() && !config.output.empty()) {
    file.open(config.output);
    if (!file) return config_error("cannot open output '" + config.output + "'");
    return cli::run(config, opts, file, std::cerr);
  }
  return cli::run(config, opts, out, std::cerr);
}
