#pragma once

// INI-style run configuration:
//
//   # comment
//   [model]
//   n = 2
//   mu = 3
//
// Unknown sections or keys, malformed values and duplicate keys raise
// ParseError naming section.key and the line. Domain violations raise
// DomainError with the same location.

#include <map>
#include <string>

#include "memwave/exponents.hpp"
#include "memwave/wave_solver.hpp"

namespace memwave {

struct OutputConfig {
  std::string directory = "out";
  bool emit_svg = false;
  bool emit_csv = true;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RegionConfig {
  ParamRange mu{0.1, 5.0, 10, false};
  ParamRange gamma{0.0, 1.0, 10, true};
  ParamRange p{2.0, 2.0, 1, false};
};

struct KatoConfig {
  double R = 1.0;
  double T0 = 0.0;  ///< <= 0 selects 10 R
  double C1 = 1.0;  ///< <= 0 calibrates from a simulation
  int iterations = 40;
};

struct TestfnConfig {
  double T = 20.0;
  double d = 1.0;
  double sigma = 0.0;  ///< <= 0 selects the default policy
  double constant = 10.0;
  bool run = false;  ///< also evaluate the estimate chain on a simulation
};

struct FracchkConfig {
  int steps = 4096;
  double horizon = 1.0;
};

struct RunConfig {
  SimulationConfig sim;
  OutputConfig output;
  RegionConfig region;
  KatoConfig kato;
  TestfnConfig testfn;
  FracchkConfig fracchk;

  const ModelParams& model() const { return sim.model; }
  /// Line of each key that was set, keyed by "section.key".
  std::map<std::string, int> key_lines;
};

RunConfig parse_config(const std::string& text);
/// Reads and parses a file; unreadable files raise IoError.
RunConfig load_config(const std::string& path);

}  // namespace memwave
