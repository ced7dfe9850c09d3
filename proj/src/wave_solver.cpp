#include "memwave/wave_solver.hpp"

#include <algorithm>
#include <cmath>

#include "memwave/errors.hpp"
#include "memwave/kato.hpp"
#include "memwave/math_util.hpp"

namespace memwave {

void SpaceGrid::validate() const {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("grid.r_max must be positive");
  if (points < 16) throw DomainError("grid.points must be >= 16");
  if (n < 1) throw DomainError("model.n must be a positive integer");
}

std::string to_string(DataShape shape) {
  switch (shape) {
    case DataShape::bump: return "bump";
    case DataShape::smooth_bump: return "smooth_bump";
    case DataShape::zero: return "zero";
  }
  return "?";
}

std::string to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::direct: return "direct";
    case SolverMode::liouville: return "liouville";
    case SolverMode::ode: return "ode";
  }
  return "?";
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::completed: return "completed";
    case Outcome::blowup_detected: return "blowup_detected";
    case Outcome::cfl_violation: return "cfl_violation";
  }
  return "?";
}

DataShape data_shape_from_string(const std::string& s) {
  if (s == "bump") return DataShape::bump;
  if (s == "smooth_bump") return DataShape::smooth_bump;
  if (s == "zero") return DataShape::zero;
  throw DomainError("data.shape must be one of bump, smooth_bump, zero");
}

SolverMode solver_mode_from_string(const std::string& s) {
  if (s == "direct") return SolverMode::direct;
  if (s == "liouville") return SolverMode::liouville;
  if (s == "ode") return SolverMode::ode;
  throw DomainError("solver.mode must be one of direct, liouville, ode");
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "completed") return Outcome::completed;
  if (s == "blowup_detected") return Outcome::blowup_detected;
  if (s == "cfl_violation") return Outcome::cfl_violation;
  throw DataError("unknown outcome '" + s + "'");
}

double InitialData::profile(double r) const {
  if (shape == DataShape::zero || r >= R) return 0.0;
  const double q = 1.0 - (r / R) * (r / R);
  if (shape == DataShape::bump) return q * q;
  return (q * q) * (q * q);
}

void InitialData::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("data.R must be positive");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("data.amplitude must be nonnegative");
  }
}

int SimulationConfig::time_steps() const {
  const double target = dt_factor * space().spacing();
  return std::max(1, static_cast<int>(std::ceil(t_end / target - 1e-9)));
}

double SimulationConfig::time_step() const { return t_end / time_steps(); }

void SimulationConfig::validate() const {
  model.validate();
  space().validate();
  data.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("grid.t_end must be positive");
  if (!(dt_factor > 0.0) || !std::isfinite(dt_factor)) {
    throw DomainError("grid.dt_factor must be positive");
  }
  if (!(blowup_threshold > 0.0)) throw DomainError("solver.blowup_threshold must be positive");
  if (!(support_tolerance > 0.0 && support_tolerance < 1.0)) {
    throw DomainError("solver.support_tolerance must lie in (0,1)");
  }
  if (mode == SolverMode::liouville && model.mu != 2.0) {
    throw DomainError("solver.mode = liouville requires model.mu = 2");
  }
  if (mode != SolverMode::ode && r_max < data.R + t_end + 2.0 * space().spacing()) {
    throw DomainError("grid.r_max must be >= data.R + grid.t_end + 2 dr");
  }
}

MemoryKernel::MemoryKernel(double gamma, double dt, int max_steps)
    : gamma_(gamma), c_gamma_(memory_constant(gamma)), weights_(1.0 - gamma, dt, max_steps) {}

namespace {

// c_γ Σ_j w_{m,j} row(j)[i], accumulated in a fixed order.
template <class Row>
void accumulate_memory(Row&& row, int m, const MemoryKernel& kernel, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j <= m; ++j) {
    const double w = kernel.weight(m, j);
    const double* src = row(j);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * src[i];
  }
  for (double& v : out) v *= kernel.c_gamma();
}

}  // namespace

std::vector<double> memory_source(std::span<const std::vector<double>> history, int m,
                                  const MemoryKernel& kernel) {
  if (m < 0 || static_cast<std::size_t>(m) >= history.size()) {
    throw DataError("memory_source: history shorter than the requested step");
  }
  if (m > kernel.max_steps()) throw DataError("memory_source: step beyond the kernel table");
  const std::size_t width = history[0].size();
  for (int j = 0; j <= m; ++j) {
    if (history[j].size() != width) throw DataError("memory_source: ragged history");
  }
  std::vector<double> out(width, 0.0);
  accumulate_memory([&](int j) { return history[j].data(); }, m, kernel, out);
  return out;
}

std::vector<double> cell_volumes(const SpaceGrid& grid) {
  const int M = grid.points;
  const double dr = grid.spacing();
  const int n = grid.n;
  std::vector<double> v(M);
  for (int i = 0; i < M; ++i) {
    const double lo = i == 0 ? 0.0 : (i - 0.5) * dr;
    const double hi = (i + 0.5) * dr;
    v[i] = (std::pow(hi, n) - std::pow(lo, n)) / n;
  }
  return v;
}

namespace {

struct RadialOperator {
  std::vector<double> face_area;  // r_{i+1/2}^{n-1}, i = 0 .. M-2
  std::vector<double> inv_volume_dr;  // 1 / (Δr V_i)
  std::vector<double> volume;
  double sphere = 0.0;

  explicit RadialOperator(const SpaceGrid& grid) {
    const int M = grid.points;
    const double dr = grid.spacing();
    volume = cell_volumes(grid);
    face_area.resize(M - 1);
    for (int i = 0; i + 1 < M; ++i) face_area[i] = std::pow((i + 0.5) * dr, grid.n - 1);
    inv_volume_dr.resize(M);
    for (int i = 0; i < M; ++i) inv_volume_dr[i] = 1.0 / (dr * volume[i]);
    sphere = sphere_measure(grid.n - 1);
  }

  void apply(std::span<const double> u, std::span<double> out) const {
    const std::size_t M = u.size();
    for (std::size_t i = 0; i < M; ++i) {
      const double outer = i + 1 < M ? face_area[i] * (u[i + 1] - u[i]) : 0.0;
      const double inner = i > 0 ? face_area[i - 1] * (u[i] - u[i - 1]) : 0.0;
      out[i] = (outer - inner) * inv_volume_dr[i];
    }
  }

  double integral(std::span<const double> f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += volume[i] * f[i];
    return sphere * acc;
  }
};

}  // namespace

void radial_laplacian(std::span<const double> u, const SpaceGrid& grid, std::span<double> out) {
  grid.validate();
  if (u.size() != static_cast<std::size_t>(grid.points) || out.size() != u.size()) {
    throw DataError("radial_laplacian: profile size does not match grid");
  }
  RadialOperator(grid).apply(u, out);
}

double radial_integral(std::span<const double> f, const SpaceGrid& grid) {
  if (f.size() != static_cast<std::size_t>(grid.points)) {
    throw DataError("radial_integral: profile size does not match grid");
  }
  return RadialOperator(grid).integral(f);
}

namespace {

// Crossing time of `threshold` between (t0, s0) and (t1, s1), interpolated in log s.
double crossing_time(double t0, double s0, double t1, double s1, double threshold) {
  if (!(s0 > 0.0) || !(s1 > s0) || !std::isfinite(s1)) return t1;
  const double f = (std::log(threshold) - std::log(s0)) / (std::log(s1) - std::log(s0));
  return t0 + std::clamp(f, 0.0, 1.0) * (t1 - t0);
}

void fill_ode_traces(RunRecord& rec, const OdeTrace& ode, const SimulationConfig& cfg,
                     double C0) {
  const double n = cfg.model.n;
  const double p = cfg.model.p;
  Traces& tr = rec.traces;
  tr.t = ode.t;
  tr.F = ode.F;
  tr.weighted_dF = ode.weighted_dF;
  for (std::size_t m = 0; m < ode.t.size(); ++m) {
    tr.sup_u.push_back(std::abs(ode.F[m]));
    tr.energy.push_back(0.0);
    tr.support_radius.push_back(0.0);
    tr.lp_mass.push_back(C0 * std::pow(1.0 + ode.t[m], -n * (p - 1.0)) *
                         std::pow(std::abs(ode.F[m]), p));
  }
}

RunRecord simulate_once(const SimulationConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  const SpaceGrid grid = cfg.space();
  const int M = grid.points;
  const double dr = grid.spacing();
  const int N = cfg.time_steps();
  const double dt = cfg.time_step();
  const double mu = cfg.model.mu;
  const double p = cfg.model.p;

  std::vector<double> u0(M), u1(M);
  for (int i = 0; i < M; ++i) {
    u0[i] = cfg.data.amplitude * cfg.data.profile(grid.node(i));
    u1[i] = u0[i];
  }
  const RadialOperator op(grid);

  if (dt > 0.9 * dr) {
    rec.outcome = Outcome::cfl_violation;
    rec.notes.push_back("time step exceeds 0.9 dr; no steps taken");
    return rec;
  }

  if (cfg.mode == SolverMode::ode) {
    const double C0 = holder_constant(cfg.model.n, std::max(1.0, cfg.data.R), p);
    const OdeTrace ode = ode_model(cfg.model, std::max(1.0, cfg.data.R), op.integral(u0),
                                   op.integral(u1), cfg.t_end, N, cfg.blowup_threshold);
    fill_ode_traces(rec, ode, cfg, C0);
    if (ode.crossing_time) {
      rec.outcome = Outcome::blowup_detected;
      rec.blowup_time_estimate = ode.crossing_time;
    }
    return rec;
  }

  const bool liouville = cfg.mode == SolverMode::liouville;
  const MemoryKernel kernel(cfg.model.gamma, dt, N);

  // w is u (direct) or v = (1+t) u (liouville).
  std::vector<double> w_prev = u0, w_cur(M), w_next(M), lap(M), src(M), u(M), u_old(M);
  std::vector<double> history(static_cast<std::size_t>(N + 1) * M);
  auto hist_row = [&](int j) { return history.data() + static_cast<std::size_t>(j) * M; };
  auto store_history = [&](int m, std::span<const double> w, double t) {
    double* row = hist_row(m);
    const double scale = liouville ? std::pow(1.0 + t, -p) : 1.0;
    for (int i = 0; i < M; ++i) row[i] = scale * std::pow(std::abs(w[i]), p);
  };

  std::optional<ProfileHistory> prof;
  if (cfg.store_profiles) prof.emplace();

  Traces& tr = rec.traces;
  double prev_sup = 0.0;
  double prev_F = 0.0;
  auto record = [&](int m, std::span<const double> w, std::span<const double> source) {
    const double t = m * dt;
    const double inv = liouville ? 1.0 / (1.0 + t) : 1.0;
    for (int i = 0; i < M; ++i) u[i] = w[i] * inv;
    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::abs(v));
    double radius = 0.0;
    for (int i = M - 1; i >= 0; --i) {
      if (std::abs(u[i]) > cfg.support_tolerance * sup) {
        radius = grid.node(i);
        break;
      }
    }
    std::vector<double> upow(M);
    for (int i = 0; i < M; ++i) upow[i] = std::pow(std::abs(u[i]), p);
    const double F = op.integral(u);

    // Kinetic part from the backward difference (u1 at t = 0).
    double kinetic = 0.0;
    for (int i = 0; i < M; ++i) {
      const double ut = m == 0 ? u1[i] : (u[i] - u_old[i]) / dt;
      kinetic += op.volume[i] * ut * ut;
    }
    double potential = 0.0;
    for (int i = 0; i + 1 < M; ++i) {
      const double g = (u[i + 1] - u[i]) / dr;
      potential += op.face_area[i] * dr * g * g;
    }

    tr.t.push_back(t);
    tr.F.push_back(F);
    tr.weighted_dF.push_back(m == 0 ? op.integral(u1)
                                    : std::pow(1.0 + t - 0.5 * dt, mu) * (F - prev_F) / dt);
    tr.sup_u.push_back(sup);
    tr.energy.push_back(0.5 * op.sphere * (kinetic + potential));
    tr.support_radius.push_back(radius);
    tr.lp_mass.push_back(op.integral(upow));

    if (prof) {
      prof->t.push_back(t);
      prof->u.emplace_back(u.begin(), u.end());
      std::vector<double> s(source.begin(), source.end());
      for (double& v : s) v *= inv;
      prof->source.push_back(std::move(s));
    }
    prev_F = F;
    u_old = u;
    return sup;
  };

  auto finite = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };

  // Step 0.
  store_history(0, w_prev, 0.0);
  std::fill(src.begin(), src.end(), 0.0);
  prev_sup = record(0, w_prev, src);

  // Step 1 eliminates the ghost level from the centred start, so the
  // weighted first difference equals w_t + Δt/2 L w exactly (source vanishes at t=0).
  {
    const double a0 = liouville ? 1.0 : std::pow(1.0 + 0.5 * dt, mu);
    op.apply(w_prev, lap);
    for (int i = 0; i < M; ++i) {
      const double wt = liouville ? u0[i] + u1[i] : u1[i];
      w_cur[i] = w_prev[i] + (dt * wt + 0.5 * dt * dt * lap[i]) / a0;
    }
  }

  bool stopped = false;
  for (int m = 1; m <= N; ++m) {
    const double t = m * dt;
    if (!finite(w_cur)) {
      rec.outcome = Outcome::blowup_detected;
      rec.blowup_time_estimate = t;
      rec.notes.push_back("non-finite values at t = " + std::to_string(t));
      stopped = true;
      break;
    }
    store_history(m, w_cur, t);
    accumulate_memory(hist_row, m, kernel, src);
    if (liouville) {
      for (double& v : src) v *= 1.0 + t;
    }
    const double sup = record(m, w_cur, src);
    if (sup > cfg.blowup_threshold) {
      rec.outcome = Outcome::blowup_detected;
      rec.blowup_time_estimate =
          crossing_time(t - dt, prev_sup, t, sup, cfg.blowup_threshold);
      stopped = true;
      break;
    }
    prev_sup = sup;
    if (m == N) break;

    op.apply(w_cur, lap);
    // ((1+t)^μ w_t)_t in flux form: a₊(w⁺-w) - a₋(w-w⁻) = Δt²(Lw + S).
    const double ap = liouville ? 1.0 : std::pow((1.0 + t + 0.5 * dt) / (1.0 + t), mu);
    const double am = liouville ? 1.0 : std::pow((1.0 + t - 0.5 * dt) / (1.0 + t), mu);
    for (int i = 0; i < M; ++i) {
      w_next[i] = w_cur[i] + (am * (w_cur[i] - w_prev[i]) + dt * dt * (lap[i] + src[i])) / ap;
    }
    std::swap(w_prev, w_cur);
    std::swap(w_cur, w_next);
  }
  (void)stopped;

  if (prof) {
    const std::size_t K = prof->u.size();
    prof->u_t.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double>& ut = prof->u_t[k];
      ut.resize(M);
      for (int i = 0; i < M; ++i) {
        if (k == 0) {
          ut[i] = u1[i];
        } else if (k + 1 == K) {
          ut[i] = (prof->u[k][i] - prof->u[k - 1][i]) / dt;
        } else {
          ut[i] = (prof->u[k + 1][i] - prof->u[k - 1][i]) / (2.0 * dt);
        }
      }
    }
    rec.profiles = std::move(prof);
  }
  return rec;
}

}  // namespace

RunRecord simulate(const SimulationConfig& config) {
  config.validate();
  RunRecord rec = simulate_once(config);
  if (rec.outcome == Outcome::blowup_detected) {
    rec.notes.push_back("certified growth: sup|u| crossed the threshold (not a proof of blow-up)");
  }
  if (config.richardson && rec.outcome == Outcome::blowup_detected && rec.blowup_time_estimate) {
    SimulationConfig fine = config;
    fine.points = 2 * (config.points - 1) + 1;
    fine.richardson = false;
    fine.store_profiles = false;
    const RunRecord refined = simulate_once(fine);
    if (refined.blowup_time_estimate) {
      const double coarse = *rec.blowup_time_estimate;
      rec.blowup_time_estimate = 2.0 * *refined.blowup_time_estimate - coarse;
      rec.notes.push_back("crossing time refined by one grid-halving Richardson pass");
    }
  }
  return rec;
}

OdeTrace ode_model(const ModelParams& model, double R, double F0, double F1, double t_end,
                   int steps, double threshold) {
  model.validate();
  if (!(F0 >= 0.0) || !(F1 >= 0.0)) throw DomainError("ode_model: F0 and F1 must be nonnegative");
  if (!(t_end > 0.0)) throw DomainError("ode_model: t_end must be positive");
  if (steps < 2) throw DomainError("ode_model: need at least 2 steps");
  const double dt = t_end / steps;
  const double mu = model.mu;
  const double p = model.p;
  const double C0 = holder_constant(model.n, R, p);
  const MemoryKernel kernel(model.gamma, dt, steps);

  OdeTrace out;
  std::vector<double> floor_hist;  // C0 (1+τ)^{-n(p-1)} |F|^p
  floor_hist.reserve(steps + 1);
  auto floor_of = [&](double t, double F) {
    return C0 * std::pow(1.0 + t, -model.n * (p - 1.0)) * std::pow(std::abs(F), p);
  };

  out.t.push_back(0.0);
  out.F.push_back(F0);
  out.weighted_dF.push_back(F1);
  floor_hist.push_back(floor_of(0.0, F0));

  double F_prev = F0;
  double F_cur = F0 + dt * F1 / std::pow(1.0 + 0.5 * dt, mu);
  for (int m = 1; m <= steps; ++m) {
    const double t = m * dt;
    if (!std::isfinite(F_cur)) {
      out.crossing_time = t;
      break;
    }
    out.t.push_back(t);
    out.F.push_back(F_cur);
    out.weighted_dF.push_back(std::pow(1.0 + t - 0.5 * dt, mu) * (F_cur - F_prev) / dt);
    if (std::abs(F_cur) > threshold) {
      out.crossing_time = crossing_time(t - dt, std::abs(F_prev), t, std::abs(F_cur), threshold);
      break;
    }
    if (m == steps) break;
    floor_hist.push_back(floor_of(t, F_cur));
    double S = 0.0;
    for (int j = 0; j <= m; ++j) S += kernel.weight(m, j) * floor_hist[j];
    S *= kernel.c_gamma();
    const double ap = std::pow((1.0 + t + 0.5 * dt) / (1.0 + t), mu);
    const double am = std::pow((1.0 + t - 0.5 * dt) / (1.0 + t), mu);
    const double F_next = F_cur + (am * (F_cur - F_prev) + dt * dt * S) / ap;
    F_prev = F_cur;
    F_cur = F_next;
  }
  return out;
}

}  // namespace memwave
