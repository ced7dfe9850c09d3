// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Usage: memwave_acceptance <path to memwave CLI>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "memwave/csv.hpp"
#include "memwave/errors.hpp"
#include "memwave/exponents.hpp"
#include "memwave/fraccalc.hpp"
#include "memwave/kato.hpp"
#include "memwave/specfun.hpp"
#include "memwave/testfn.hpp"
#include "memwave/wave_solver.hpp"

using namespace memwave;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double finite_or_inf(const Exponent& e) {
  return e.is_finite() ? e.value() : std::numeric_limits<double>::infinity();
}

std::vector<double> sample(const TimeGrid& g, const std::function<double(double)>& f) {
  std::vector<double> v;
  for (double t : g.nodes()) v.push_back(f(t));
  return v;
}

// 1. p0 is a root of its quadratic.
void exponent_algebra(Check& v) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ne(1.01, 12.0), g(0.01, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double n = ne(rng), gamma = g(rng);
    const double p = p0_exponent(n, gamma).value();
    worst = std::max(worst, std::abs((n - 1) * p * p - (n + 3 - 2 * gamma) * p - 2));
  }
  const double at = std::abs(p0_exponent(5.0, 0.5).value() - 2.0);
  const double secs = seconds_since(start);
  v.detail << "max residual " << worst << ", |p0(5,0.5)-2| " << at << ", " << secs << " s";
  v.require(worst < 1e-12, "residual");
  v.require(at <= 1e-12, "p0(5,0.5)");
  v.require(secs < 1.0, "runtime");
}

// 2. γ → 1 limits.
void limit_laws(Check& v) {
  const double g = 1.0 - 1e-8;
  double e_str = 0.0, e_fuj = 0.0;
  for (double n : {2.0, 3.0, 5.0, 10.0}) {
    e_str = std::max(e_str, std::abs(p0_exponent(n, g).value() - strauss_exponent(n).value()));
  }
  for (int n : {1, 2, 3, 5, 10}) {
    const ExponentReport r = shifted_exponents({n, 3.0, g, 2.0});
    e_fuj = std::max(e_fuj, std::abs(r.p1.value() - fujita_exponent(n)));
  }
  const double e_d0 = std::abs(d0_parameter(2, g) - 1.0);
  v.detail << "|p0-p_Str| " << e_str << ", |p1-p_Fuj| " << e_fuj << ", |d0(2)-1| " << e_d0;
  v.require(e_str <= 1e-6, "Strauss limit");
  v.require(e_fuj <= 1e-6, "Fujita limit");
  v.require(e_d0 <= 1e-6, "d0 limit");
}

// 3. Two-dimensional max formula.
void two_dimensional_formula(Check& v) {
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double mu = 1.0 + 4.0 * i / 50.0;
    for (int j = 0; j < 50; ++j) {
      const double g = (j + 0.5) / 50.0;
      const ModelParams m{2, mu, g, 2.0};
      const double ours = std::max(finite_or_inf(theorem1_bound(m)), finite_or_inf(theorem2_bound(m)));
      const double disc = mu * mu + 18 * mu - 4 * mu * g + 4 * g * g - 20 * g + 33;
      const double formula =
          std::max(4.0 / (1.0 + g), (5.0 + mu - 2 * g + std::sqrt(disc)) / (2.0 * (1.0 + mu)));
      worst = std::max(worst, std::abs(ours - formula));
    }
  }
  v.detail << "max deviation over 2500 cells " << worst;
  v.require(worst <= 1e-10, "formula");
}

// 4. Fractional calculus.
void fractional_calculus(Check& v) {
  const auto start = std::chrono::steady_clock::now();
  struct Fn {
    const char* name;
    double (*f)(double);
  };
  const Fn fns[] = {{"1", [](double) { return 1.0; }},
                    {"t", [](double t) { return t; }},
                    {"t^2", [](double t) { return t * t; }},
                    {"sin", [](double t) { return std::sin(t); }}};
  auto inversion_error = [](const Fn& fn, double alpha, int N) {
    const TimeGrid g{0.0, 1.0, N};
    const auto f = sample(g, fn.f);
    const auto D = rl_left_derivative(rl_left_integral(f, g, alpha), g, alpha);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i <= N; ++i) {
      if (g.node(i) < 0.1) continue;
      err = std::max(err, std::abs(D[i] - f[i]));
      scale = std::max(scale, std::abs(f[i]));
    }
    return err / scale;
  };
  double worst = 0.0, min_ratio = std::numeric_limits<double>::infinity();
  for (const Fn& fn : fns) {
    for (double alpha : {0.3, 0.5, 0.7}) {
      const double fine = inversion_error(fn, alpha, 4096);
      const double coarse = inversion_error(fn, alpha, 2048);
      worst = std::max(worst, fine);
      // Ratios at rounding level carry no order information.
      if (fine > 1e-11) min_ratio = std::min(min_ratio, coarse / fine);
    }
  }

  const PowerTestFunction w{2.0, 12.0};
  const TimeGrid g{0.0, 2.0, 4096};
  double power_err = 0.0;
  for (int k : {0, 1, 2}) {
    const KernelOrder ord{0.5, k};
    const auto num = rl_right_derivative_numeric(sample(g, w), g, ord);
    double scale = 0.0;
    for (int i = 0; i <= 4096; ++i) scale = std::max(scale, std::abs(rl_right_derivative_power(w, ord, g.node(i))));
    for (int i = 0; i <= 3686; ++i) {
      power_err = std::max(power_err, std::abs(num[i] - rl_right_derivative_power(w, ord, g.node(i))) / scale);
    }
  }

  const TimeGrid gi{0.0, 1.0, 4096};
  const auto f = sample(gi, [](double t) { return std::pow(1.0 - t, 6.0); });
  const auto gg = sample(gi, [](double t) { return t * t; });
  const double ibp = check_integration_by_parts(f, gg, 0.5, gi).relative;
  const double secs = seconds_since(start);

  v.detail << "inversion max rel " << worst << " (window [0.1T,T]), min halving ratio " << min_ratio
           << " (need " << std::pow(2.0, 1.3) << "), power derivative rel " << power_err
           << " on [0,0.9T], IBP rel " << ibp << ", " << secs << " s";
  v.require(worst <= 1e-3, "inversion error");
  v.require(min_ratio >= std::pow(2.0, 1.3), "halving ratio");
  v.require(power_err <= 1e-3, "power derivative");
  v.require(ibp <= 1e-3, "integration by parts");
  v.require(secs < 30.0, "runtime");
}

// 5. Lemma ratios stay bounded.
void lemma_ratios(Check& v) {
  const std::vector<double> horizons{1e2, 1e3, 1e4};
  double worst = 0.0;
  struct Case {
    LemmaVariant variant;
    double mu;
  };
  const Case cases[] = {{LemmaVariant::weight_1_plus_t, 0.0},
                        {LemmaVariant::weight_mixed, 0.0},
                        {LemmaVariant::weight_mu, 0.5},
                        {LemmaVariant::weight_mu_mixed, 0.5},
                        {LemmaVariant::weight_mu, 1.0},
                        {LemmaVariant::weight_mu_mixed, 1.0}};
  for (int k : {0, 1, 2}) {
    for (double p : {1.5, 2.0, 3.0}) {
      for (const Case& c : cases) {
        const auto r = lemma_integral_ratio(k, 0.5, p, c.variant, c.mu, horizons);
        for (double x : r) worst = std::max(worst, x / r[0]);
      }
    }
  }
  v.detail << "max ratio / ratio(T=1e2) " << worst;
  v.require(worst <= 10.0, "boundedness");
}

// 6. Special functions.
void special_functions(Check& v) {
  double kerr = 0.0;
  for (double t = 0.5; t <= 20.0 + 1e-12; t += 0.01) {
    const double exact = std::sqrt(M_PI / (2.0 * t)) * std::exp(-t);
    kerr = std::max(kerr, std::abs(bessel_k(0.5, t) / exact - 1.0));
  }
  double dres = 0.0;
  for (double nu : {0.0, 0.25, 0.5, 1.0, 2.5}) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      dres = std::max(dres, bessel_k_derivative_check(nu, t).residual);
    }
  }
  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(0.1 * i);
  double lres = 0.0;
  for (double mu : {0.5, 2.0, 4.0}) lres = std::max(lres, lambda_ode_residual(mu, times, 1e-3, true));
  std::vector<double> r1, r3;
  for (double r = 0.1; r <= 5.0 + 1e-12; r += 0.1) r1.push_back(r);
  for (double r = 0.1; r <= 10.0 + 1e-12; r += 0.1) r3.push_back(r);
  const EigenResidual e1 = phi_eigen_residual(1, r1), e3 = phi_eigen_residual(3, r3);
  const double phi_abs = std::max(e1.absolute, e3.absolute);
  const double phi_rel = std::max(e1.relative, e3.relative);
  v.detail << "K_1/2 rel " << kerr << ", derivative residual " << dres << ", lambda residual "
           << lres << ", Phi residual abs " << phi_abs << " rel " << phi_rel;
  v.require(kerr <= 1e-8, "K_1/2");
  v.require(dres <= 1e-6, "derivative identity");
  v.require(lres <= 1e-6, "lambda ODE");
  v.require(phi_abs <= 1e-5, "Phi eigen");
}

KatoParams random_kato(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KatoParams k;
  k.alpha0 = 3.0 * u(rng);
  k.beta0 = 3.0 * u(rng);
  k.K0 = std::exp(-5.0 + 6.0 * u(rng));
  k.Ktilde0 = std::exp(-5.0 + 6.0 * u(rng));
  k.a0 = 4.0 * u(rng);
  k.a1 = 2.0 * u(rng) - 1.0;
  k.a2 = 2.0 * u(rng) - 1.0;
  k.a3 = 2.0 * u(rng) - 1.0;
  k.p = 1.1 + 3.0 * u(rng);
  k.T0 = 3.0 * u(rng);
  return k;
}

// 7. Kato engine.
void kato_engine(Check& v) {
  std::mt19937_64 rng(77);
  double rec = 0.0;
  for (int s = 0; s < 100; ++s) {
    const KatoParams k = random_kato(rng);
    const KatoTrace t = iterate_sequences(k, 30);
    for (int j = 0; j <= 30; ++j) {
      const double a = alpha_closed_form(k, j), b = beta_closed_form(k, j);
      if (a != 0.0) rec = std::max(rec, std::abs(t.alpha[j] / a - 1.0));
      if (b != 0.0) rec = std::max(rec, std::abs(t.beta[j] / b - 1.0));
    }
  }
  std::uniform_real_distribution<double> pd(1.0 + 1e-6, 5.0);
  double sum = 0.0;
  for (int s = 0; s < 500; ++s) {
    const double p = pd(rng);
    for (int j = 1; j <= 40; ++j) sum = std::max(sum, summation_identity_relative(p, j));
  }
  double norm = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const KatoParams k = random_kato(rng);
    norm = std::max(norm, std::abs(check_blowup_condition(normalize_negative_exponents(k)).margin -
                                   check_blowup_condition(k).margin));
  }
  std::uniform_int_distribution<int> nd(1, 8);
  std::uniform_real_distribution<double> mu(0.01, 8.0), g(0.01, 0.99), p(1.01, 8.0);
  int disagreements = 0;
  for (int s = 0; s < 10000; ++s) {
    const ModelParams m{nd(rng), mu(rng), g(rng), p(rng)};
    const bool holds = check_blowup_condition(build_kato_instance(m, 1.0, 2.0, 1.0)).holds;
    if (holds != (final_quadratic(m) > 0.0)) ++disagreements;
  }
  v.detail << "closed form rel " << rec << ", summation rel " << sum << ", normalization shift "
           << norm << ", sign disagreements " << disagreements << "/10000";
  v.require(rec <= 1e-12, "closed forms");
  v.require(sum <= 1e-9, "summation identity");
  v.require(norm <= 1e-12, "normalization");
  v.require(disagreements == 0, "final quadratic");
}

// 8. Envelope growth and collapse.
void envelope_behaviour(Check& v) {
  std::mt19937_64 rng(88);
  int grown = 0, collapsed = 0, drawn = 0;
  double min_growth = std::numeric_limits<double>::infinity();
  double max_decay = -std::numeric_limits<double>::infinity();
  bool monotone = true;
  while ((grown < 20 || collapsed < 20) && drawn < 100000) {
    ++drawn;
    const KatoParams k = normalize_negative_exponents(random_kato(rng));
    const double margin = check_blowup_condition(k).margin;
    const KatoTrace tr = iterate_sequences(k, 40);
    if (margin > 0.0 && grown < 20) {
      const double ts = blowup_time_bound(k, tr);
      if (!std::isfinite(2.0 * ts)) continue;
      double prev = lower_envelope(k, tr, 2.0 * ts, tr.j0);
      const double first = prev;
      for (int j = tr.j0 + 1; j <= tr.j0 + 30; ++j) {
        const double cur = lower_envelope(k, tr, 2.0 * ts, j);
        monotone = monotone && cur > prev;
        prev = cur;
      }
      min_growth = std::min(min_growth, prev - first);
      ++grown;
    } else if (margin < 0.0 && collapsed < 20) {
      // A time where the inner logarithm is negative; it decreases in t here.
      const double t_min = std::max(1.0, 2.0 * k.T0);
      double t = t_min;
      const double at_min = inner_log(k, tr, t_min);
      if (at_min >= 0.0) {
        const double slope = margin / (k.p - 1.0);
        t = std::exp(std::log(t_min) - at_min / slope + 1.0);
        if (!std::isfinite(t)) continue;
      }
      double prev = lower_envelope(k, tr, t, tr.j0);
      const double first = prev;
      for (int j = tr.j0 + 1; j <= tr.j0 + 30; ++j) {
        const double cur = lower_envelope(k, tr, t, j);
        monotone = monotone && cur < prev;
        prev = cur;
      }
      max_decay = std::max(max_decay, prev - first);
      ++collapsed;
    }
  }
  v.detail << grown << " growing sets, min log-gain " << min_growth << " (need "
           << std::log(1e6) << "); " << collapsed << " collapsing sets, max log-change "
           << max_decay << " (need <= " << std::log(1e-6) << ")";
  v.require(grown == 20 && collapsed == 20, "sample counts");
  v.require(monotone, "strict monotonicity");
  v.require(min_growth >= std::log(1e6), "growth factor");
  v.require(max_decay <= std::log(1e-6), "collapse factor");
}

SimulationConfig smooth(int n, double mu, int points, double t_end) {
  SimulationConfig c;
  c.model = {n, mu, 0.5, 2.0};
  c.r_max = 8.0;
  c.points = points;
  c.t_end = t_end;
  c.data = {DataShape::smooth_bump, 0.5, 1.0};
  return c;
}

// 9. Solver physics.
void solver_physics(Check& v) {
  // Zero data.
  bool zero_ok = true;
  for (int n : {1, 2, 3}) {
    SimulationConfig c = smooth(n, 1.5, 201, 2.0);
    c.data.shape = DataShape::zero;
    const RunRecord r = simulate(c);
    for (std::size_t k = 0; k < r.traces.size(); ++k) {
      zero_ok = zero_ok && r.traces.F[k] == 0.0 && r.traces.sup_u[k] == 0.0;
    }
  }

  // Support radius against R + t + 2Δr over 10^4 steps.
  double excess = -std::numeric_limits<double>::infinity();
  int steps = 0;
  double cone_excess = -std::numeric_limits<double>::infinity();
  {
    SimulationConfig c = smooth(3, 1.5, 64, 4.0);
    const double dr = c.space().spacing();
    c.dt_factor = c.t_end / (1e4 * dr) * 1.0000001;
    const RunRecord r = simulate(c);
    steps = static_cast<int>(r.traces.size()) - 1;
    for (std::size_t k = 0; k < r.traces.size(); ++k) {
      excess = std::max(excess, r.traces.support_radius[k] - (c.data.R + r.traces.t[k] + 2 * dr));
    }
    c.support_tolerance = 1e-300;
    const RunRecord s = simulate(c);
    for (std::size_t k = 0; k < s.traces.size(); ++k) {
      cone_excess = std::max(cone_excess, s.traces.support_radius[k] - (c.data.R + (k + 2) * dr));
    }
  }

  // Memory source of a constant history.
  double mem = 0.0;
  {
    const double dt = 0.01;
    const MemoryKernel kernel(0.5, dt, 1000);
    const std::vector<std::vector<double>> hist(1001, std::vector<double>(1, 1.0));
    for (int m = 1; m <= 1000; m += 37) {
      const double exact = std::pow(m * dt, 0.5) / std::tgamma(1.5);
      mem = std::max(mem, std::abs(memory_source(hist, m, kernel)[0] - exact));
    }
  }

  // Self-convergence of F at the final time.
  double order = 0.0;
  {
    const SimulationConfig c = smooth(3, 1.5, 101, 2.0);
    double F[3];
    int i = 0;
    for (int points : {101, 201, 401}) {
      SimulationConfig ci = c;
      ci.points = points;
      F[i++] = simulate(ci).traces.F.back();
    }
    order = std::log2(std::abs(F[0] - F[1]) / std::abs(F[1] - F[2]));
  }

  // Direct against Liouville at μ = 2.
  double worst_liou = 0.0;
  {
    SimulationConfig c = smooth(2, 2.0, 201, 3.0);
    const Traces a = simulate(c).traces;
    c.mode = SolverMode::liouville;
    const Traces b = simulate(c).traces;
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      scale = std::max(scale, std::abs(a.F[k]));
      diff = std::max(diff, std::abs(a.F[k] - b.F[k]));
    }
    const double dr = c.space().spacing();
    worst_liou = diff / (5.0 * (c.time_step() + dr * dr) * scale);
  }

  // Runtime at M = 400, N = 4000.
  double secs = 0.0;
  {
    SimulationConfig c = smooth(1, 1.5, 400, 4.0);
    c.r_max = 12.0;
    c.dt_factor = c.t_end / (4000 * c.space().spacing()) * 1.0000001;
    const auto start = std::chrono::steady_clock::now();
    const RunRecord r = simulate(c);
    secs = seconds_since(start);
    if (r.traces.size() != 4001) secs = std::numeric_limits<double>::infinity();
  }

  v.detail << "zero data exact " << (zero_ok ? "yes" : "no") << "; support excess over R+t+2dr "
           << excess << " across " << steps << " steps (tolerance 1e-10; strict one-cell-per-step cone excess "
           << cone_excess << "); memory source error " << mem << "; order " << order
           << "; Liouville diff / bound " << worst_liou << "; M=400 N=4000 run " << secs << " s";
  v.require(zero_ok, "zero data");
  v.require(steps == 10000 && excess <= 0.0, "support radius");
  v.require(mem <= 1e-10, "memory source");
  v.require(order >= 1.8, "convergence order");
  v.require(worst_liou <= 1.0, "Liouville agreement");
  v.require(secs < 60.0, "runtime");
}

// 10. Growth of the reduced ODE and the PDE at matched parameters.
void blowup_evidence(Check& v) {
  const ModelParams m{1, 0.5, 0.5, 2.0};
  const double reference = 6.73212;  // 64000-step run
  const OdeTrace ode = ode_model(m, 1.0, 1.0, 1.0, 20.0, 4000);
  const double crossing = ode.crossing_time.value_or(std::numeric_limits<double>::infinity());

  SimulationConfig c;
  c.model = m;
  c.r_max = 16.0;
  c.points = 401;
  c.t_end = 12.0;
  c.data = {DataShape::bump, 1.0, 1.0};
  const RunRecord r = simulate(c);

  auto worst_drop = [](const std::vector<double>& w) {
    double worst = 0.0;
    for (std::size_t k = 1; k < w.size(); ++k) {
      const double drop = (w[k - 1] - w[k]) / std::max(std::abs(w[k - 1]), 1e-300);
      worst = std::max(worst, drop);
    }
    return worst;
  };
  const double drop = std::max(worst_drop(ode.weighted_dF), worst_drop(r.traces.weighted_dF));
  v.detail << "ODE crossing " << crossing << " (reference " << reference << "), PDE outcome "
           << to_string(r.outcome) << " at t = " << r.blowup_time_estimate.value_or(NAN)
           << ", worst relative drop of (1+t)^mu F' " << drop;
  v.require(std::abs(crossing / reference - 1.0) <= 0.02, "ODE crossing");
  v.require(r.outcome == Outcome::blowup_detected, "PDE outcome");
  v.require(drop <= 1e-6, "monotone functional");
}

// 11. Case tables from the candidate d.
void case_tables(Check& v) {
  int mismatches = 0, checked = 0;
  for (double mu : {0.2, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    for (int n = 1; n <= 6; ++n) {
      for (double gamma : {0.1, 0.5, 0.9}) {
        const ExponentReport e = shifted_exponents({n, mu, gamma, 2.0});
        const double p1 = finite_or_inf(e.p1), p2 = finite_or_inf(e.p2);
        const double p3 = finite_or_inf(e.p3), p4 = finite_or_inf(e.p4);
        // Exponent part of each bullet; n/(n-2) is the separate local-existence cap.
        double bound;
        if (mu == 2.0) {
          bound = p1;
        } else if (mu > 1.0) {
          bound = n <= 2 ? p1 : n == 3 ? std::min(p1, p2) : p2;
        } else {
          bound = n == 1 ? p3 : n <= 3 ? std::min(p3, p4) : p4;
        }
        const double top = std::isfinite(bound) ? std::min(2.0 * bound, 12.0) : 12.0;
        for (int k = 1; k <= 40; ++k) {
          const double p = 1.0 + (top - 1.0) * k / 40.0;
          const double d = case_candidate_d(n, mu, gamma, p);
          const bool witness = power_exponents(n, mu, gamma, p, d).feasible();
          if (witness != (p <= bound * (1.0 + 1e-12))) ++mismatches;
          ++checked;
        }
      }
    }
  }
  v.detail << mismatches << " mismatches over " << checked << " (case, p) points";
  v.require(mismatches == 0, "classification");
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 12. CLI determinism and exit codes.
void cli_contract(Check& v, const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / ("memwave_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "[model]\nn = 1\nmu = 0.5\ngamma = 0.5\np = 2\n"
                        "[grid]\nr_max = 16\npoints = 401\nt_end = 12\n"
                        "[data]\nshape = bump\namplitude = 1\nR = 1\n";
  const fs::path bad = dir / "bad.ini";
  std::ofstream(bad) << "[model]\nn = 2\nmu = 3\ngamma = 1.5\np = 2\n";

  int identical = 0, differing = 0;
  for (const char* command : {"region-map", "simulate"}) {
    const fs::path a = dir / (std::string(command) + "_a"), b = dir / (std::string(command) + "_b");
    run_cli(cli, std::string(command) + " --config " + cfg.string() + " --svg --out " + a.string());
    run_cli(cli, std::string(command) + " --config " + cfg.string() + " --svg --out " + b.string());
    if (!fs::exists(a)) {
      ++differing;
      continue;
    }
    for (const auto& entry : fs::directory_iterator(a)) {
      const std::string ext = entry.path().extension().string();
      if (ext != ".csv" && ext != ".svg") continue;
      const fs::path other = b / entry.path().filename();
      if (fs::exists(other) && read_text(entry.path().string()) == read_text(other.string())) {
        ++identical;
      } else {
        ++differing;
      }
    }
  }
  const int ok = run_cli(cli, "exponents --config " + cfg.string() + " --out " + (dir / "e").string());
  const int domain = run_cli(cli, "exponents --config " + bad.string() + " --out " + (dir / "d").string());
  const int blow = run_cli(cli, "simulate --config " + cfg.string() + " --fail-on-blowup --out " +
                                    (dir / "f").string());
  fs::remove_all(dir);
  v.detail << identical << " identical CSV/SVG files, " << differing << " differing; exit codes "
           << ok << "/" << domain << "/" << blow << " (expected 0/1/2)";
  v.require(identical >= 4 && differing == 0, "determinism");
  v.require(ok == 0 && domain == 1 && blow == 2, "exit codes");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <memwave CLI path>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"exponent algebra", exponent_algebra},
      {"limit laws", limit_laws},
      {"two-dimensional max formula", two_dimensional_formula},
      {"fractional calculus", fractional_calculus},
      {"lemma ratio boundedness", lemma_ratios},
      {"special functions", special_functions},
      {"Kato engine", kato_engine},
      {"envelope behaviour", envelope_behaviour},
      {"solver physics", solver_physics},
      {"blow-up evidence", blowup_evidence},
      {"case tables", case_tables},
      {"CLI determinism and exit codes", [&](Check& v) { cli_contract(v, cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check v;
    try {
      criteria[i].run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
