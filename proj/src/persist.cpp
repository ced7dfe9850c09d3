#include "memwave/persist.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <json.hpp>

#include "memwave/csv.hpp"
#include "memwave/errors.hpp"

namespace memwave {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json config_to_json(const SimulationConfig& c) {
  return json{
      {"model", {{"n", c.model.n}, {"mu", c.model.mu}, {"gamma", c.model.gamma}, {"p", c.model.p}}},
      {"grid",
       {{"r_max", c.r_max}, {"points", c.points}, {"t_end", c.t_end}, {"dt_factor", c.dt_factor}}},
      {"data",
       {{"shape", to_string(c.data.shape)}, {"amplitude", c.data.amplitude}, {"R", c.data.R}}},
      {"solver",
       {{"blowup_threshold", c.blowup_threshold},
        {"mode", to_string(c.mode)},
        {"richardson", c.richardson},
        {"support_tolerance", c.support_tolerance},
        {"store_profiles", c.store_profiles}}},
  };
}

SimulationConfig config_from_json(const json& j) {
  SimulationConfig c;
  c.model.n = j.at("model").at("n").get<int>();
  c.model.mu = j.at("model").at("mu").get<double>();
  c.model.gamma = j.at("model").at("gamma").get<double>();
  c.model.p = j.at("model").at("p").get<double>();
  c.r_max = j.at("grid").at("r_max").get<double>();
  c.points = j.at("grid").at("points").get<int>();
  c.t_end = j.at("grid").at("t_end").get<double>();
  c.dt_factor = j.at("grid").at("dt_factor").get<double>();
  c.data.shape = data_shape_from_string(j.at("data").at("shape").get<std::string>());
  c.data.amplitude = j.at("data").at("amplitude").get<double>();
  c.data.R = j.at("data").at("R").get<double>();
  c.blowup_threshold = j.at("solver").at("blowup_threshold").get<double>();
  c.mode = solver_mode_from_string(j.at("solver").at("mode").get<std::string>());
  c.richardson = j.at("solver").at("richardson").get<bool>();
  c.support_tolerance = j.at("solver").at("support_tolerance").get<double>();
  c.store_profiles = j.at("solver").at("store_profiles").get<bool>();
  return c;
}

const std::vector<std::string> kTraceColumns = {"t",      "F",              "weighted_dF", "sup_u",
                                                "energy", "support_radius", "lp_mass"};

CsvTable traces_table(const Traces& tr) {
  CsvTable t;
  t.header = kTraceColumns;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    t.add_row({format_real(tr.t[i]), format_real(tr.F[i]), format_real(tr.weighted_dF[i]),
               format_real(tr.sup_u[i]), format_real(tr.energy[i]),
               format_real(tr.support_radius[i]), format_real(tr.lp_mass[i])});
  }
  return t;
}

Traces traces_from_table(const CsvTable& t) {
  if (t.header != kTraceColumns) throw IntegrityError("trace file has unexpected columns");
  Traces tr;
  for (const auto& row : t.rows) {
    tr.t.push_back(parse_real(row[0]));
    tr.F.push_back(parse_real(row[1]));
    tr.weighted_dF.push_back(parse_real(row[2]));
    tr.sup_u.push_back(parse_real(row[3]));
    tr.energy.push_back(parse_real(row[4]));
    tr.support_radius.push_back(parse_real(row[5]));
    tr.lp_mass.push_back(parse_real(row[6]));
  }
  return tr;
}

std::string timestamp_now() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0') now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything that identifies the record except the timestamp and the hash itself.
json record_body(const PersistedRecord& r, const std::string& traces_hash) {
  json j;
  j["schema_version"] = r.schema_version;
  j["config"] = config_to_json(r.config);
  j["outcome"] = to_string(r.outcome);
  j["blowup_time_estimate"] =
      r.blowup_time_estimate ? json(*r.blowup_time_estimate) : json(nullptr);
  j["notes"] = r.notes;
  j["trace_files"] = r.trace_files;
  j["tool_version"] = r.tool_version;
  j["traces_hash"] = traces_hash;
  return j;
}

}  // namespace

std::string config_canonical_json(const SimulationConfig& config) {
  return config_to_json(config).dump();
}

std::string run_directory_name(const SimulationConfig& config) {
  return "run-" + fnv1a_hex(config_canonical_json(config));
}

RunRecord PersistedRecord::to_run_record() const {
  RunRecord r;
  r.schema_version = schema_version;
  r.config = config;
  r.traces = traces;
  r.outcome = outcome;
  r.blowup_time_estimate = blowup_time_estimate;
  r.notes = notes;
  return r;
}

PersistedRecord persist_run(const RunRecord& record, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path sub = fs::path(directory) / run_directory_name(record.config);

  PersistedRecord p;
  p.schema_version = record.schema_version;
  p.config = record.config;
  p.outcome = record.outcome;
  p.blowup_time_estimate = record.blowup_time_estimate;
  p.notes = record.notes;
  p.trace_files = {"traces.csv"};
  p.traces = record.traces;
  p.directory = sub.string();

  const std::string traces_text = to_csv_text(traces_table(record.traces));
  const json body = record_body(p, fnv1a_hex(traces_text));
  p.content_hash = fnv1a_hex(body.dump());

  if (fs::exists(sub / "record.json")) {
    PersistedRecord existing = load_run(sub.string());
    if (existing.content_hash != p.content_hash) {
      throw IntegrityError("run directory '" + sub.string() +
                           "' already holds a different record for this configuration");
    }
    return existing;
  }

  std::error_code ec;
  fs::create_directories(sub, ec);
  if (ec) throw IoError("cannot create '" + sub.string() + "'");
  p.timestamp = timestamp_now();
  json full = body;
  full["timestamp"] = p.timestamp;
  full["content_hash"] = p.content_hash;
  write_text_atomic((sub / "traces.csv").string(), traces_text);
  write_text_atomic((sub / "record.json").string(), full.dump(2) + "\n");
  // Re-read through the parser so the returned value matches load_run exactly.
  p.traces = traces_from_table(parse_csv_text(traces_text));
  return p;
}

PersistedRecord load_run(const std::string& run_directory) {
  namespace fs = std::filesystem;
  const fs::path sub(run_directory);
  const std::string text = read_text((sub / "record.json").string());
  PersistedRecord p;
  try {
    const json j = json::parse(text);
    p.schema_version = j.at("schema_version").get<int>();
    if (p.schema_version != RunRecord::kSchemaVersion) {
      throw IntegrityError("unsupported schema_version " + std::to_string(p.schema_version));
    }
    p.timestamp = j.at("timestamp").get<std::string>();
    p.config = config_from_json(j.at("config"));
    p.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    if (!j.at("blowup_time_estimate").is_null()) {
      p.blowup_time_estimate = j.at("blowup_time_estimate").get<double>();
    }
    p.notes = j.at("notes").get<std::vector<std::string>>();
    p.trace_files = j.at("trace_files").get<std::vector<std::string>>();
    p.tool_version = j.at("tool_version").get<std::string>();
    p.content_hash = j.at("content_hash").get<std::string>();
    const std::string traces_hash = j.at("traces_hash").get<std::string>();

    if (fnv1a_hex(record_body(p, traces_hash).dump()) != p.content_hash) {
      throw IntegrityError("record.json does not match its content hash");
    }
    const std::string traces_text = read_text((sub / "traces.csv").string());
    if (fnv1a_hex(traces_text) != traces_hash) {
      throw IntegrityError("traces.csv does not match the recorded hash");
    }
    p.traces = traces_from_table(parse_csv_text(traces_text));
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("record.json is malformed: ") + e.what());
  } catch (const DataError& e) {
    throw IntegrityError(std::string("run record is malformed: ") + e.what());
  } catch (const DomainError& e) {
    throw IntegrityError(std::string("run record is malformed: ") + e.what());
  }
  p.directory = sub.string();
  return p;
}

}  // namespace memwave
