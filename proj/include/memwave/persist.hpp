#pragma once

// Content-addressed persistence of run records: <dir>/run-<hash of config>/
// holds record.json and traces.csv. The record carries a hash of its own
// content (timestamp excluded) and of the trace file.

#include <optional>
#include <string>
#include <vector>

#include "memwave/wave_solver.hpp"

namespace memwave {

inline constexpr const char* kToolVersion = "memwave 0.1.0";

struct PersistedRecord {
  int schema_version = RunRecord::kSchemaVersion;
  std::string timestamp;
  SimulationConfig config;
  Outcome outcome = Outcome::completed;
  std::optional<double> blowup_time_estimate;
  std::vector<std::string> notes;
  std::vector<std::string> trace_files;
  std::string tool_version = kToolVersion;
  std::string content_hash;
  std::string directory;
  Traces traces;

  RunRecord to_run_record() const;
  friend bool operator==(const PersistedRecord&, const PersistedRecord&) = default;
};

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

/// Canonical JSON text of a configuration (sorted keys, no whitespace).
std::string config_canonical_json(const SimulationConfig& config);
/// Name of the run subdirectory for a configuration.
std::string run_directory_name(const SimulationConfig& config);

/// Writes the record unless an identical one is already present.
/// A different record under the same key raises IntegrityError.
PersistedRecord persist_run(const RunRecord& record, const std::string& directory);

/// Loads and verifies a run subdirectory. Tampering raises IntegrityError.
PersistedRecord load_run(const std::string& run_directory);

}  // namespace memwave
