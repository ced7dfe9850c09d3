#include "memwave/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "memwave/errors.hpp"

namespace memwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const std::string& key, int line) {
  return key + " (line " + std::to_string(line) + ")";
}

double to_real(const std::string& key, const std::string& v, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(where(key, line) + ": expected a real number, got '" + v + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v, int line) {
  int out = 0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(where(key, line) + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError(where(key, line) + ": expected true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

std::map<std::string, Setter> setters() {
  std::map<std::string, Setter> s;
  auto real = [&](const std::string& key, auto member) {
    s[key] = [key, member](RunConfig& c, const std::string& v, int line) {
      member(c) = to_real(key, v, line);
    };
  };
  auto integer = [&](const std::string& key, auto member) {
    s[key] = [key, member](RunConfig& c, const std::string& v, int line) {
      member(c) = to_int(key, v, line);
    };
  };
  auto flag = [&](const std::string& key, auto member) {
    s[key] = [key, member](RunConfig& c, const std::string& v, int line) {
      member(c) = to_bool(key, v, line);
    };
  };

  integer("model.n", [](RunConfig& c) -> int& { return c.sim.model.n; });
  real("model.mu", [](RunConfig& c) -> double& { return c.sim.model.mu; });
  real("model.gamma", [](RunConfig& c) -> double& { return c.sim.model.gamma; });
  real("model.p", [](RunConfig& c) -> double& { return c.sim.model.p; });

  real("grid.r_max", [](RunConfig& c) -> double& { return c.sim.r_max; });
  integer("grid.points", [](RunConfig& c) -> int& { return c.sim.points; });
  real("grid.t_end", [](RunConfig& c) -> double& { return c.sim.t_end; });
  real("grid.dt_factor", [](RunConfig& c) -> double& { return c.sim.dt_factor; });

  s["data.shape"] = [](RunConfig& c, const std::string& v, int line) {
    try {
      c.sim.data.shape = data_shape_from_string(v);
    } catch (const DomainError&) {
      throw ParseError(where("data.shape", line) + ": expected bump, smooth_bump or zero");
    }
  };
  real("data.amplitude", [](RunConfig& c) -> double& { return c.sim.data.amplitude; });
  real("data.R", [](RunConfig& c) -> double& { return c.sim.data.R; });

  real("solver.blowup_threshold", [](RunConfig& c) -> double& { return c.sim.blowup_threshold; });
  s["solver.mode"] = [](RunConfig& c, const std::string& v, int line) {
    try {
      c.sim.mode = solver_mode_from_string(v);
    } catch (const DomainError&) {
      throw ParseError(where("solver.mode", line) + ": expected direct, liouville or ode");
    }
  };
  flag("solver.richardson", [](RunConfig& c) -> bool& { return c.sim.richardson; });
  real("solver.support_tolerance",
       [](RunConfig& c) -> double& { return c.sim.support_tolerance; });

  s["output.directory"] = [](RunConfig& c, const std::string& v, int line) {
    if (v.empty()) throw ParseError(where("output.directory", line) + ": empty path");
    c.output.directory = v;
  };
  flag("output.emit_svg", [](RunConfig& c) -> bool& { return c.output.emit_svg; });
  flag("output.emit_csv", [](RunConfig& c) -> bool& { return c.output.emit_csv; });

  real("region.mu_min", [](RunConfig& c) -> double& { return c.region.mu.lo; });
  real("region.mu_max", [](RunConfig& c) -> double& { return c.region.mu.hi; });
  integer("region.mu_count", [](RunConfig& c) -> int& { return c.region.mu.count; });
  flag("region.mu_open", [](RunConfig& c) -> bool& { return c.region.mu.open; });
  real("region.gamma_min", [](RunConfig& c) -> double& { return c.region.gamma.lo; });
  real("region.gamma_max", [](RunConfig& c) -> double& { return c.region.gamma.hi; });
  integer("region.gamma_count", [](RunConfig& c) -> int& { return c.region.gamma.count; });
  flag("region.gamma_open", [](RunConfig& c) -> bool& { return c.region.gamma.open; });
  real("region.p_min", [](RunConfig& c) -> double& { return c.region.p.lo; });
  real("region.p_max", [](RunConfig& c) -> double& { return c.region.p.hi; });
  integer("region.p_count", [](RunConfig& c) -> int& { return c.region.p.count; });
  flag("region.p_open", [](RunConfig& c) -> bool& { return c.region.p.open; });

  real("kato.R", [](RunConfig& c) -> double& { return c.kato.R; });
  real("kato.T0", [](RunConfig& c) -> double& { return c.kato.T0; });
  real("kato.C1", [](RunConfig& c) -> double& { return c.kato.C1; });
  integer("kato.iterations", [](RunConfig& c) -> int& { return c.kato.iterations; });

  real("testfn.T", [](RunConfig& c) -> double& { return c.testfn.T; });
  real("testfn.d", [](RunConfig& c) -> double& { return c.testfn.d; });
  real("testfn.sigma", [](RunConfig& c) -> double& { return c.testfn.sigma; });
  real("testfn.constant", [](RunConfig& c) -> double& { return c.testfn.constant; });
  flag("testfn.run", [](RunConfig& c) -> bool& { return c.testfn.run; });

  integer("fracchk.steps", [](RunConfig& c) -> int& { return c.fracchk.steps; });
  real("fracchk.horizon", [](RunConfig& c) -> double& { return c.fracchk.horizon; });
  return s;
}

// Validation messages start with "section.key"; attach the line where it was set.
[[noreturn]] void rethrow_with_line(const DomainError& e, const RunConfig& c) {
  const std::string msg = e.what();
  const auto space = msg.find(' ');
  const std::string key = msg.substr(0, space);
  const auto it = c.key_lines.find(key);
  if (it != c.key_lines.end()) {
    throw DomainError(msg + " (line " + std::to_string(it->second) + ")");
  }
  throw DomainError(msg);
}

void validate(const RunConfig& c) {
  try {
    c.sim.model.validate();
    c.sim.data.validate();
    c.sim.space().validate();
    if (!(c.sim.t_end > 0.0)) throw DomainError("grid.t_end must be positive");
    if (!(c.sim.dt_factor > 0.0)) throw DomainError("grid.dt_factor must be positive");
    if (!(c.sim.blowup_threshold > 0.0)) {
      throw DomainError("solver.blowup_threshold must be positive");
    }
    if (!(c.sim.support_tolerance > 0.0 && c.sim.support_tolerance < 1.0)) {
      throw DomainError("solver.support_tolerance must lie in (0,1)");
    }
    if (c.sim.mode == SolverMode::liouville && c.sim.model.mu != 2.0) {
      throw DomainError("solver.mode = liouville requires model.mu = 2");
    }
    c.region.mu.validate("region.mu");
    c.region.gamma.validate("region.gamma");
    c.region.p.validate("region.p");
    if (!(c.kato.R >= 1.0)) throw DomainError("kato.R must be >= 1");
    if (c.kato.iterations < 1 || c.kato.iterations > 200) {
      throw DomainError("kato.iterations must lie in [1, 200]");
    }
    if (!(c.testfn.T > 1.0)) throw DomainError("testfn.T must exceed 1");
    if (!(c.testfn.d > 0.0)) throw DomainError("testfn.d must be positive");
    if (c.fracchk.steps < 8) throw DomainError("fracchk.steps must be >= 8");
    if (!(c.fracchk.horizon > 0.0)) throw DomainError("fracchk.horizon must be positive");
  } catch (const DomainError& e) {
    rethrow_with_line(e, c);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  static const std::map<std::string, Setter> table = setters();
  static const char* const sections[] = {"model", "grid",   "data",   "solver", "output",
                                         "region", "kato", "testfn", "fracchk"};
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ParseError("line " + std::to_string(line) + ": malformed section header");
      }
      section = trim(s.substr(1, s.size() - 2));
      bool known = false;
      for (const char* name : sections) known = known || section == name;
      if (!known) {
        throw ParseError("line " + std::to_string(line) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    if (section.empty()) {
      throw ParseError("line " + std::to_string(line) + ": key outside any section");
    }
    const std::string key = section + "." + trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) throw ParseError(where(key, line) + ": unknown key");
    const auto prev = c.key_lines.find(key);
    if (prev != c.key_lines.end()) {
      throw ParseError("duplicate key " + key + " at lines " + std::to_string(prev->second) +
                       " and " + std::to_string(line));
    }
    c.key_lines[key] = line;
    it->second(c, value, line);
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace memwave
