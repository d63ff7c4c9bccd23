#include "spinent/cli.hpp"
#include "spinent/error.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  using namespace spinent::cli;

  CLI::App app{"Spin correlations and entanglement witnesses of ideal spin-1/2 gases"};
  std::string config_path;
  std::optional<std::string> workflow;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--workflow", workflow, "freespace | trap | lattice | validate | threshold");
  app.add_option("--out", out, "output path");
  app.add_option("--format", format, "csv | json");
  app.add_option("--seed", seed, "seed for the validation sampler");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (workflow) config.workflow = parse_workflow(*workflow);
    if (out) config.output = *out;
    if (format) config.format = parse_format(*format);
    if (seed) config.seed = *seed;
  } catch (const spinent::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::string errors;
  std::string summary;
  const int status = run_and_report(config, errors, summary);
  if (!errors.empty()) std::cerr << errors << '\n';
  if (!summary.empty()) std::cout << summary << '\n';
  return status;
}
