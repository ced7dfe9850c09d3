#include "memwave/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "memwave/csv.hpp"
#include "memwave/errors.hpp"
#include "memwave/exponents.hpp"
#include "memwave/fraccalc.hpp"
#include "memwave/kato.hpp"
#include "memwave/persist.hpp"
#include "memwave/specfun.hpp"
#include "memwave/svg.hpp"
#include "memwave/testfn.hpp"

namespace memwave {

namespace {

const std::pair<Command, const char*> kNames[] = {
    {Command::exponents, "exponents"}, {Command::region_map, "region-map"},
    {Command::simulate, "simulate"},   {Command::kato, "kato"},
    {Command::fracchk, "fracchk"},     {Command::specchk, "specchk"},
    {Command::testfn, "testfn"},
};

std::string fmt(double x) { return format_real(x); }
std::string fmt(const Exponent& e) { return format_real(e.as_double()); }
std::string fmt(bool b) { return b ? "true" : "false"; }
std::string fmt(int i) { return std::to_string(i); }

struct Context {
  const RunConfig& config;
  std::filesystem::path out;
  bool csv;
  bool svg;
  std::ostream& log;

  void table(const CsvTable& t, const std::string& name) const {
    if (!csv) return;
    write_csv(t, (out / name).string());
    log << "wrote " << (out / name).string() << "\n";
  }
  template <class Plot>
  void plot(const Plot& p, const std::string& name) const {
    if (!svg) return;
    write_svg(p, (out / name).string());
    log << "wrote " << (out / name).string() << "\n";
  }
};

int cmd_exponents(const Context& ctx) {
  const ModelParams& m = ctx.config.model();
  const ExponentReport r = shifted_exponents(m);
  const BlowupVerdict v = classify(m);
  CsvTable t;
  t.header = {"n",  "mu", "gamma", "p",  "fujita", "strauss", "pgamma", "p0", "p1",
              "p2", "p3", "p4",    "d0", "d1",     "sobolev_cap", "regime", "thm1_bound",
              "thm2_bound", "verdict"};
  t.add_row({fmt(m.n), fmt(m.mu), fmt(m.gamma), fmt(m.p), fmt(r.fujita), fmt(r.strauss),
             fmt(r.pgamma), fmt(r.p0), fmt(r.p1), fmt(r.p2), fmt(r.p3), fmt(r.p4), fmt(r.d0),
             fmt(r.d1), fmt(r.sobolev_cap), to_string(v.regime), fmt(v.thm1_bound),
             fmt(v.thm2_bound), to_string(v.verdict)});
  ctx.table(t, "exponents.csv");
  ctx.log << "verdict: " << to_string(v.verdict) << "\n";
  return exit_code::success;
}

int cmd_region_map(const Context& ctx) {
  const RegionConfig& rc = ctx.config.region;
  const int n = ctx.config.model().n;
  const auto cells = region_grid(n, rc.mu, rc.gamma, rc.p);
  CsvTable t;
  t.header = {"n", "mu", "gamma", "p", "regime", "thm1_bound", "thm2_bound", "verdict"};
  for (const auto& c : cells) {
    t.add_row({fmt(n), fmt(c.mu), fmt(c.gamma), fmt(c.p), to_string(c.verdict.regime),
               fmt(c.verdict.thm1_bound), fmt(c.verdict.thm2_bound),
               to_string(c.verdict.verdict)});
  }
  ctx.table(t, "region_map.csv");

  // One heatmap per sampled p; cells are indexed μ-major as in region_grid.
  for (int k = 0; k < rc.p.count; ++k) {
    Heatmap h;
    char title[96];
    std::snprintf(title, sizeof title, "Blow-up verdict, n = %d, p = %.6g", n, rc.p.at(k));
    h.title = title;
    h.x_label = "mu";
    h.y_label = "gamma";
    h.columns = rc.mu.count;
    h.rows = rc.gamma.count;
    h.x_min = rc.mu.lo;
    h.x_max = rc.mu.hi;
    h.y_min = rc.gamma.lo;
    h.y_max = rc.gamma.hi;
    h.categories = {"blowup_thm1", "blowup_thm2", "blowup_both", "outside_known_range"};
    for (int i = 0; i < rc.mu.count; ++i) {
      for (int j = 0; j < rc.gamma.count; ++j) {
        const auto& c = cells[(static_cast<std::size_t>(i) * rc.gamma.count + j) * rc.p.count + k];
        h.cells.push_back({i, j, to_string(c.verdict.verdict)});
      }
    }
    ctx.plot(h, rc.p.count == 1 ? std::string("region_map.svg")
                                : "region_map_p" + std::to_string(k) + ".svg");
  }
  return exit_code::success;
}

int cmd_simulate(const Context& ctx, const CommandFlags& flags) {
  const RunRecord rec = simulate(ctx.config.sim);
  if (rec.outcome == Outcome::cfl_violation) {
    throw DomainError("grid.dt_factor violates the CFL restriction dt <= 0.9 dr");
  }
  const PersistedRecord p = persist_run(rec, ctx.out.string());
  ctx.log << "persisted " << p.directory << "\n";

  CsvTable s;
  s.header = {"key", "value"};
  s.add_row({"outcome", to_string(rec.outcome)});
  s.add_row({"blowup_time_estimate",
             rec.blowup_time_estimate ? fmt(*rec.blowup_time_estimate) : std::string()});
  s.add_row({"steps", fmt(static_cast<int>(rec.traces.size()) - 1)});
  s.add_row({"run_directory", run_directory_name(rec.config)});
  s.add_row({"content_hash", p.content_hash});
  for (const auto& note : rec.notes) s.add_row({"note", note});
  ctx.table(s, "simulate_summary.csv");

  SeriesPlot plot;
  plot.title = "Functional F(t) and sup |u|";
  plot.x_label = "t";
  plot.y_label = "log10 value";
  plot.log_y = true;
  plot.series.push_back({"F", rec.traces.t, rec.traces.F});
  plot.series.push_back({"sup_u", rec.traces.t, rec.traces.sup_u});
  ctx.plot(plot, "simulate.svg");

  ctx.log << "outcome: " << to_string(rec.outcome) << "\n";
  if (rec.outcome == Outcome::blowup_detected && flags.fail_on_blowup) return exit_code::blowup;
  return exit_code::success;
}

int cmd_kato(const Context& ctx) {
  const ModelParams& m = ctx.config.model();
  m.validate();
  const KatoConfig& kc = ctx.config.kato;
  const double T0 = kc.T0 > 0.0 ? kc.T0 : 10.0 * kc.R;
  double C1 = kc.C1;
  if (!(C1 > 0.0)) {
    SimulationConfig sim = ctx.config.sim;
    sim.t_end = std::max(sim.t_end, 2.0 * T0);
    sim.r_max = std::max(sim.r_max, sim.data.R + sim.t_end + 1.0);
    const RunRecord rec = simulate(sim);
    C1 = calibrate_c1(m, rec.traces.t, rec.traces.lp_mass, T0);
  }
  const KatoParams params = build_kato_instance(m, kc.R, T0, C1);
  const ConditionCheck cond = check_blowup_condition(params);
  const KatoTrace trace = iterate_sequences(params, kc.iterations);

  CsvTable t;
  t.header = {"j", "alpha", "beta", "log_K"};
  for (std::size_t j = 0; j < trace.alpha.size(); ++j) {
    t.add_row({fmt(static_cast<int>(j)), fmt(trace.alpha[j]), fmt(trace.beta[j]),
               fmt(trace.log_K[j])});
  }
  ctx.table(t, "kato_trace.csv");

  CsvTable s;
  s.header = {"key", "value"};
  s.add_row({"alpha0", fmt(params.alpha0)});
  s.add_row({"beta0", fmt(params.beta0)});
  s.add_row({"log_K0", fmt(std::log(params.K0))});
  s.add_row({"log_Ktilde0", fmt(std::log(params.Ktilde0))});
  s.add_row({"a0", fmt(params.a0)});
  s.add_row({"C1", fmt(C1)});
  s.add_row({"T0", fmt(T0)});
  s.add_row({"margin", fmt(cond.margin)});
  s.add_row({"condition_holds", fmt(cond.holds)});
  s.add_row({"final_quadratic", fmt(final_quadratic(m))});
  s.add_row({"log_D", fmt(trace.log_D)});
  s.add_row({"j0", fmt(trace.j0)});
  s.add_row({"log_E0", fmt(trace.log_E0)});
  std::string tstar;
  if (cond.holds) tstar = fmt(blowup_time_bound(params, trace));
  s.add_row({"blowup_time_bound", tstar});
  ctx.table(s, "kato_summary.csv");
  ctx.log << "condition margin: " << fmt(cond.margin) << "\n";
  return exit_code::success;
}

int cmd_fracchk(const Context& ctx) {
  const FracchkConfig& fc = ctx.config.fracchk;
  const TimeGrid grid{0.0, fc.horizon, fc.steps};
  grid.validate();
  const auto t = grid.nodes();
  struct Fn {
    const char* name;
    double (*f)(double);
  };
  const Fn fns[] = {{"1", [](double) { return 1.0; }},
                    {"t", [](double x) { return x; }},
                    {"t^2", [](double x) { return x * x; }},
                    {"sin", [](double x) { return std::sin(x); }}};
  CsvTable out;
  out.header = {"check", "function", "alpha", "value"};
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (const Fn& fn : fns) {
      std::vector<double> f(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) f[i] = fn.f(t[i]);
      const auto I = rl_left_integral(f, grid, alpha);
      const auto D = rl_left_derivative(I, grid, alpha);
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0.1 * fc.horizon) continue;
        err = std::max(err, std::abs(D[i] - f[i]));
        scale = std::max(scale, std::abs(f[i]));
      }
      out.add_row({"inversion_relative_error", fn.name, fmt(alpha), fmt(err / scale)});
    }
    std::vector<double> f(t.size()), g(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      f[i] = std::pow(1.0 - t[i] / fc.horizon, 3);
      g[i] = t[i] * t[i];
    }
    const auto ibp = check_integration_by_parts(f, g, alpha, grid);
    out.add_row({"integration_by_parts_relative", "(1-t/T)^3 vs t^2", fmt(alpha),
                 fmt(ibp.relative)});
  }
  ctx.table(out, "fracchk.csv");
  return exit_code::success;
}

int cmd_specchk(const Context& ctx) {
  const ModelParams& m = ctx.config.model();
  CsvTable out;
  out.header = {"check", "parameter", "value"};
  double kerr = 0.0;
  for (int i = 0; i <= 39; ++i) {
    const double x = 0.5 + 0.5 * i;
    const double exact = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
    kerr = std::max(kerr, std::abs(bessel_k(0.5, x) / exact - 1.0));
  }
  out.add_row({"bessel_k_half_relative_error", "nu=0.5", fmt(kerr)});
  for (double nu : {0.5, 1.0, 1.5, 0.5 * (m.mu - 1.0)}) {
    double res = 0.0;
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      res = std::max(res, bessel_k_derivative_check(nu, x).residual);
    }
    out.add_row({"bessel_derivative_residual", "nu=" + fmt(nu), fmt(res)});
  }
  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(0.1 * i);
  for (double mu : {0.5, 2.0, 4.0, m.mu}) {
    out.add_row({"lambda_ode_relative_residual", "mu=" + fmt(mu),
                 fmt(lambda_ode_residual(mu, times, 1e-3, true))});
  }
  std::vector<double> radii;
  for (int i = 1; i <= 20; ++i) radii.push_back(0.25 * i);
  for (int n : {1, 3, m.n}) {
    const EigenResidual r = phi_eigen_residual(n, radii);
    out.add_row({"phi_eigen_absolute_residual", "n=" + fmt(n), fmt(r.absolute)});
    out.add_row({"phi_eigen_relative_residual", "n=" + fmt(n), fmt(r.relative)});
  }
  ctx.table(out, "specchk.csv");
  return exit_code::success;
}

void add_power_row(CsvTable& t, const std::string& source, const PowerReport& r) {
  t.add_row({source, fmt(r.d), fmt(r.exponent[0]), fmt(r.exponent[1]),
             r.has_third ? fmt(r.exponent[2]) : std::string(), fmt(r.feasible())});
}

int cmd_testfn(const Context& ctx) {
  const ModelParams& m = ctx.config.model();
  m.validate();
  const TestfnConfig& tc = ctx.config.testfn;
  CsvTable t;
  t.header = {"source", "d", "e1", "e2", "e3", "feasible"};
  add_power_row(t, "config", power_exponents(m.n, m.mu, m.gamma, m.p, tc.d));
  const double cand = case_candidate_d(m.n, m.mu, m.gamma, m.p);
  add_power_row(t, "candidate", power_exponents(m.n, m.mu, m.gamma, m.p, cand));
  if (const auto fd = feasible_d(m.n, m.mu, m.gamma, m.p)) {
    add_power_row(t, "feasible", fd->report);
  } else {
    t.add_row({"feasible", "", "", "", "", "false"});
  }
  ctx.table(t, "testfn.csv");

  if (tc.run) {
    if (!(m.mu > 1.0)) throw DomainError("testfn.run requires model.mu > 1");
    SimulationConfig sim = ctx.config.sim;
    sim.store_profiles = true;
    const RunRecord rec = simulate(sim);
    const double T = std::min(tc.T, rec.traces.t.back());
    const SpatialCutoff cutoff = SpatialCutoff::with_default_ell(sim.data.R, tc.d, m.p);
    const PowerTestFunction w{T, tc.sigma > 0.0 ? tc.sigma
                                                : PowerTestFunction::default_sigma(m.p, 2)};
    const auto r = test_functional_report(rec, T, cutoff, w, tc.constant);
    CsvTable f;
    f.header = {"key", "value"};
    f.add_row({"T", fmt(T)});
    f.add_row({"I_T", fmt(r.I_T)});
    f.add_row({"I0_plus", fmt(r.I0_plus)});
    f.add_row({"I0_minus", fmt(r.I0_minus)});
    f.add_row({"u0_term", fmt(r.u0_term)});
    f.add_row({"J1", fmt(r.J1)});
    f.add_row({"J2", fmt(r.J2)});
    f.add_row({"J3", fmt(r.J3)});
    f.add_row({"constant", fmt(r.constant)});
    f.add_row({"inequality_holds", fmt(r.inequality_holds)});
    ctx.table(f, "testfn_functional.csv");
  }
  return exit_code::success;
}

}  // namespace

std::string to_string(Command command) {
  for (const auto& [c, name] : kNames) {
    if (c == command) return name;
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  for (const auto& [c, n] : kNames) {
    if (name == n) return c;
  }
  throw DomainError("unknown command '" + name + "'");
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& entry : kNames) out.emplace_back(entry.second);
  return out;
}

std::string resolve_output_directory(const RunConfig& config, const CommandFlags& flags) {
  if (flags.out && !flags.out->empty()) return *flags.out;
  if (const char* env = std::getenv("MEMWAVE_OUT"); env && *env) return env;
  return config.output.directory;
}

int run_command(Command command, const RunConfig& config, const CommandFlags& flags,
                std::ostream& log) {
  const Context ctx{config, resolve_output_directory(config, flags), config.output.emit_csv,
                    config.output.emit_svg || flags.svg, log};
  switch (command) {
    case Command::exponents: return cmd_exponents(ctx);
    case Command::region_map: return cmd_region_map(ctx);
    case Command::simulate: return cmd_simulate(ctx, flags);
    case Command::kato: return cmd_kato(ctx);
    case Command::fracchk: return cmd_fracchk(ctx);
    case Command::specchk: return cmd_specchk(ctx);
    case Command::testfn: return cmd_testfn(ctx);
  }
  return exit_code::domain_error;
}

int execute(const std::string& command, const std::string& config_path,
            const CommandFlags& flags, std::ostream& log, std::ostream& err) {
  try {
    const Command c = command_from_string(command);
    const RunConfig config = load_config(config_path);
    return run_command(c, config, flags, log);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain_error;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain_error;
  } catch (const NoCertificateError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain_error;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return exit_code::io_error;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return exit_code::io_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return exit_code::io_error;
  }
}

}  // namespace memwave
