// memwave <command> --config <path> [--out <dir>] [--fail-on-blowup] [--svg]

#include <CLI11.hpp>
#include <iostream>

#include "memwave/commands.hpp"
#include "memwave/persist.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Damped wave equations with nonlinear memory: exponents, simulation and checks"};
  app.set_version_flag("--version", std::string(memwave::kToolVersion));

  std::string command;
  std::string config_path;
  std::string out;
  memwave::CommandFlags flags;
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(memwave::command_names()));
  app.add_option("--config", config_path, "Configuration file")->required();
  app.add_option("--out", out, "Output directory (overrides MEMWAVE_OUT and the config)");
  app.add_flag("--fail-on-blowup", flags.fail_on_blowup, "Exit with status 2 on detected blow-up");
  app.add_flag("--svg", flags.svg, "Also write SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : memwave::exit_code::domain_error;
  }
  if (!out.empty()) flags.out = out;
  return memwave::execute(command, config_path, flags, std::cout, std::cerr);
}
