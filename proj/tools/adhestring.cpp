#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "adhestring/cli_io.hpp"
#include "adhestring/errors.hpp"

namespace {

using namespace adhestring;

int load(const std::string& path, RunConfig& out) {
  try {
    out = load_config(path);
    return exit_code::ok;
  } catch (const ConfigError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return exit_code::config;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return exit_code::io;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adhesive string simulator"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Solve a config and write its outputs");
  run_cmd->add_option("config", run_path, "Config file")->required();

  std::string target;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a named scenario or every scenario of a manifest");
  exp_cmd->add_option("target", target, "Scenario name or manifest path")->required();

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Parse and validate a config");
  check_cmd->add_option("config", check_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_code::ok : exit_code::config;
  }

  if (run_cmd->parsed()) {
    RunConfig config;
    if (const int rc = load(run_path, config); rc != exit_code::ok) return rc;
    return run(config, std::cout);
  }
  if (check_cmd->parsed()) {
    RunConfig config;
    if (const int rc = load(check_path, config); rc != exit_code::ok) return rc;
    std::cout << serialize_config(config);
    return exit_code::ok;
  }

  std::vector<std::string> names;
  if (std::filesystem::is_regular_file(target)) {
    try {
      names = read_manifest(target);
    } catch (const IoError& e) {
      std::cerr << e.what() << '\n';
      return exit_code::io;
    }
  } else {
    names.push_back(target);
  }
  const std::string root = output_root("out");
  int worst = exit_code::ok;
  for (const auto& name : names) {
    std::cout << "== " << name << '\n';
    const int rc = run_experiment(name, root, std::cout);
    if (rc != exit_code::ok && (worst == exit_code::ok || rc > worst)) worst = rc;
  }
  return worst;
}
