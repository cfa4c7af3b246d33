#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qladder/run.hpp"
#include "qladder/types.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw qladder::cli::ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw qladder::cli::ConfigError(std::string("config parse error: ") + e.what());
  }
}

void apply_overrides(json& config, const std::string& output,
                     const std::string& format) {
  if (!output.empty()) config["output"]["path"] = output;
  if (!format.empty()) config["output"]["format"] = format;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dynamics of laser-driven multilevel ladder systems"};
  app.require_subcommand(1);

  std::string config_path, output, format;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--output", output, "output path (overrides config)");
    sub->add_option("--format", format, "csv|structured (overrides config)");
  };
  CLI::App* sim = app.add_subcommand("simulate", "evaluate a trajectory");
  CLI::App* spec = app.add_subcommand("spectral", "eigendecomposition + trajectory");
  CLI::App* ver = app.add_subcommand("verify", "cross-method comparison report");
  app.add_subcommand("families", "list system families");
  add_common(sim);
  add_common(spec);
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("families"))
      return qladder::cli::run_families(std::cout);
    json config = load_config(config_path);
    apply_overrides(config, output, format);
    if (app.got_subcommand("simulate"))
      return qladder::cli::run_simulate(config, std::cerr);
    if (app.got_subcommand("spectral"))
      return qladder::cli::run_spectral(config, std::cerr);
    return qladder::cli::run_verify(config, std::cerr);
  } catch (const qladder::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qladder::EvaluationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
