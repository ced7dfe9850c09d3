#pragma once

// Subcommand pipelines behind the memwave executable. Each command reads a
// RunConfig, writes CSV (and SVG when enabled) under the output directory and
// returns an exit status.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "memwave/config.hpp"

namespace memwave {

enum class Command { exponents, region_map, simulate, kato, fracchk, specchk, testfn };

std::string to_string(Command command);
/// Throws DomainError for unknown names.
Command command_from_string(const std::string& name);
std::vector<std::string> command_names();

struct CommandFlags {
  std::optional<std::string> out;  ///< --out
  bool fail_on_blowup = false;
  bool svg = false;  ///< --svg, in addition to output.emit_svg
};

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int domain_error = 1;
inline constexpr int blowup = 2;
inline constexpr int io_error = 3;
}  // namespace exit_code

/// --out, then the MEMWAVE_OUT environment variable, then output.directory.
std::string resolve_output_directory(const RunConfig& config, const CommandFlags& flags);

/// Runs one command. Returns 0, or 2 when a blow-up was detected and
/// fail_on_blowup is set; errors propagate as exceptions.
int run_command(Command command, const RunConfig& config, const CommandFlags& flags,
                std::ostream& log);

/// Loads the configuration, runs the command and maps exceptions to exit codes.
int execute(const std::string& command, const std::string& config_path,
            const CommandFlags& flags, std::ostream& log, std::ostream& err);

}  // namespace memwave
