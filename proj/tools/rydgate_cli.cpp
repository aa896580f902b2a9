#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rydgate/config.hpp"
#include "rydgate/errors.hpp"
#include "rydgate/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rydberg CZ gate simulator, pulse optimizer and error budget"};
  std::string mode, config_path, out_dir = ".";
  std::vector<std::string> overrides;
  long long seed = -1;
  bool json = false;

  app.add_option("mode", mode, "simulate | optimize | sweep | budget")->required();
  app.add_option("--config,-c", config_path, "config file")->required();
  app.add_option("--set", overrides, "key=value override, repeatable");
  app.add_option("--seed", seed, "seed for every random draw");
  app.add_option("--out,-o", out_dir, "output directory");
  app.add_flag("--json", json, "also write a JSON copy of every CSV");
  app.set_version_flag("--version", std::string(rydgate::version()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rydgate::kExitConfig;
  }

  try {
    std::ifstream in(config_path);
    if (!in) throw rydgate::ConfigError("cannot read config file '" + config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    overrides.insert(overrides.begin(), "mode=" + mode);
    if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
    const rydgate::ExperimentConfig config = rydgate::parse_config(text.str(), overrides);
    const rydgate::RunOutcome outcome = rydgate::run(config, out_dir, json, std::cerr);
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    return outcome.exit_code;
  } catch (const rydgate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return rydgate::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return rydgate::kExitConfig;
  }
}
