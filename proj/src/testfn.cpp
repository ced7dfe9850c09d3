#include "memwave/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "memwave/errors.hpp"
#include "memwave/exponents.hpp"

namespace memwave {

namespace {

double threshold_of(DpVariant variant, double mu) {
  if (variant == DpVariant::standard) return 2.0;
  if (!(mu > 0.0)) throw DomainError("dp_factor: mu must be positive for the weighted variant");
  return 1.0 + 1.0 / mu;
}

// Non-strict exponent checks allow rounding noise of this size.
constexpr double kExponentSlack = 1e-12;

}  // namespace

DpBranch dp_branch(double p, DpVariant variant, double mu) {
  if (!(p > 1.0)) throw DomainError("dp_factor: p must exceed 1");
  const double th = threshold_of(variant, mu);
  if (std::abs(p - th) <= 1e-12 * th) return DpBranch::logarithm;
  return p > th ? DpBranch::power : DpBranch::constant;
}

double dp_factor(double p, double T, DpVariant variant, double mu) {
  if (!(T > 1.0)) throw DomainError("dp_factor: T must exceed 1");
  switch (dp_branch(p, variant, mu)) {
    case DpBranch::logarithm: return std::log(T);
    case DpBranch::constant: return 1.0;
    case DpBranch::power: {
      const double e = variant == DpVariant::standard ? (p - 2.0) / (p - 1.0)
                                                      : mu - 1.0 / (p - 1.0);
      return std::pow(T, e);
    }
  }
  return 1.0;
}

GaugeRegime gauge_regime(double mu) {
  if (!(mu > 0.0)) throw DomainError("gauge: mu must be positive");
  return mu > 1.0 ? GaugeRegime::gauge_over_1 : GaugeRegime::gauge_under_1;
}

double gauge(double mu, double t) {
  if (gauge_regime(mu) == GaugeRegime::gauge_over_1) return (t + 1.0) / (mu - 1.0);
  return std::pow(1.0 + t, mu);
}

double gauge_identity_residual(double mu, std::span<const double> times) {
  if (!(mu > 1.0)) throw DomainError("gauge_identity_residual: mu must exceed 1");
  const double gp = 1.0 / (mu - 1.0);
  double worst = 0.0;
  for (double t : times) {
    const double g = (t + 1.0) / (mu - 1.0);
    worst = std::max(worst, std::abs(gp + 1.0 - mu * (g / (1.0 + t))));
  }
  return worst;
}

PowerReport power_exponents(int n, double mu, double gamma, double p, double d) {
  ModelParams{n, mu, gamma, p}.validate();
  if (!(d > 0.0)) throw DomainError("power_exponents: d must be positive");
  PowerReport r;
  r.regime = gauge_regime(mu);
  r.d = d;
  const double pc = p / (p - 1.0);
  r.p_conj = pc;
  const double nd = n * d;

  if (r.regime == GaugeRegime::gauge_over_1) {
    r.exponent[0] = 2.0 - (3.0 - gamma) * pc + nd;
    r.exponent[1] = 2.0 - (1.0 - gamma) * pc + nd - 2.0 * d * pc;
    r.has_third = mu != 2.0;
    r.branch = dp_branch(p, DpVariant::standard);
    const double shift = r.branch == DpBranch::power ? (p - 2.0) / (p - 1.0) : 0.0;
    r.exponent[2] = shift + nd - (2.0 - gamma) * pc;
  } else {
    r.exponent[0] = mu + 1.0 - (3.0 - gamma) * pc + nd;
    r.exponent[1] = mu + 1.0 - (1.0 - gamma) * pc + nd - 2.0 * d * pc;
    r.has_third = true;
    r.branch = dp_branch(p, DpVariant::mu_weighted, mu);
    const double shift = r.branch == DpBranch::power ? mu - 1.0 / (p - 1.0) : 0.0;
    r.exponent[2] = shift + nd - (2.0 - gamma) * pc;
  }
  r.slope[0] = n;
  r.slope[1] = n - 2.0 * pc;
  r.slope[2] = n;
  r.third_strict = r.branch == DpBranch::logarithm;

  r.ok[0] = r.exponent[0] <= kExponentSlack;
  r.ok[1] = r.exponent[1] <= kExponentSlack;
  r.ok[2] = r.third_strict ? r.exponent[2] < 0.0 : r.exponent[2] <= kExponentSlack;
  return r;
}

double case_candidate_d(int n, double mu, double gamma, double p) {
  if (mu == 2.0) return 1.0;
  if (mu > 1.0) {
    if (n >= 4) return d0_parameter(n, gamma);
    return dp_branch(p, DpVariant::standard) == DpBranch::power ? 1.0 : d0_parameter(n, gamma);
  }
  if (n >= 4) return d1_parameter(n, mu, gamma);
  return dp_branch(p, DpVariant::mu_weighted, mu) == DpBranch::power
             ? 1.0
             : d1_parameter(n, mu, gamma);
}

std::optional<FeasibleD> feasible_d(int n, double mu, double gamma, double p) {
  // Exponents are affine in d; read off intercepts from two evaluations.
  const PowerReport at1 = power_exponents(n, mu, gamma, p, 1.0);
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  bool lo_open = true, hi_open = false;
  const int terms = at1.has_third ? 3 : 2;
  for (int k = 0; k < terms; ++k) {
    const double s = at1.slope[k];
    const double c = at1.exponent[k] - s;  // value at d = 0
    const bool strict = k == 2 && at1.third_strict;
    const double slack = strict ? 0.0 : kExponentSlack;
    if (s == 0.0) {
      if (strict ? !(c < 0.0) : !(c <= slack)) return std::nullopt;
      continue;
    }
    const double root = (slack - c) / s;
    if (s > 0.0) {
      if (root < hi || (root == hi && strict)) {
        hi = root;
        hi_open = strict;
      }
    } else {
      if (root > lo || (root == lo && strict)) {
        lo = root;
        lo_open = strict;
      }
    }
  }
  const bool nonempty = lo < hi || (lo == hi && !lo_open && !hi_open && lo > 0.0);
  if (!nonempty) return std::nullopt;

  FeasibleD out;
  out.lo = lo;
  out.hi = hi;
  const double candidate = case_candidate_d(n, mu, gamma, p);
  const PowerReport at_candidate = power_exponents(n, mu, gamma, p, candidate);
  if (at_candidate.feasible()) {
    out.d = candidate;
    out.report = at_candidate;
    return out;
  }
  double d = std::isfinite(hi) ? (lo == hi ? lo : 0.5 * (lo + hi)) : lo + 1.0;
  if (!(d > 0.0)) d = std::isfinite(hi) ? 0.5 * hi : 1.0;
  out.d = d;
  out.report = power_exponents(n, mu, gamma, p, d);
  if (!out.report.feasible()) return std::nullopt;
  return out;
}

double cutoff_profile(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double x = s - 1.0;
  const double x4 = x * x * x * x;
  return 1.0 - x4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

double cutoff_profile_d1(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double x = s - 1.0;
  const double y = 1.0 - x;
  return -140.0 * x * x * x * y * y * y;
}

double cutoff_profile_d2(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double x = s - 1.0;
  const double y = 1.0 - x;
  return -420.0 * x * x * y * y * (1.0 - 2.0 * x);
}

SpatialCutoff SpatialCutoff::with_default_ell(double R, double d, double p) {
  return {R, d, 2.0 * p / (p - 1.0) + 1.0};
}

double SpatialCutoff::value(double r, double T) const {
  return cutoff_profile(R * r / std::pow(T, d));
}

double SpatialCutoff::laplacian_of_power(int n, double r, double T) const {
  const double k = R / std::pow(T, d);
  const double s = k * r;
  const double phi = cutoff_profile(s);
  const double d1 = cutoff_profile_d1(s);
  const double d2 = cutoff_profile_d2(s);
  if (phi <= 0.0) return 0.0;
  const double f1 = ell * std::pow(phi, ell - 1.0) * d1 * k;
  const double f2 = k * k * (ell * (ell - 1.0) * std::pow(phi, ell - 2.0) * d1 * d1 +
                             ell * std::pow(phi, ell - 1.0) * d2);
  if (r == 0.0) return n * f2;
  return f2 + (n - 1) / r * f1;
}

namespace {

const ProfileHistory& require_profiles(const RunRecord& run) {
  if (!run.profiles || run.profiles->u.empty()) {
    throw DataError("run holds no stored profiles");
  }
  return *run.profiles;
}

// Largest stored index with time <= t.
std::size_t last_index_before(const ProfileHistory& prof, double t) {
  const double dt = prof.t.size() > 1 ? prof.t[1] - prof.t[0] : 0.0;
  if (t > prof.t.back() + 1e-9 * std::max(1.0, dt)) {
    throw DataError("run does not reach the requested time");
  }
  std::size_t k = 0;
  while (k + 1 < prof.t.size() && prof.t[k + 1] <= t + 1e-9 * std::max(1.0, dt)) ++k;
  return k;
}

double trapezoid_over(std::span<const double> t, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
  return acc;
}

}  // namespace

WeakFormResidual weak_form_residual(const RunRecord& run, WeakTestFunction psi, double t) {
  const ProfileHistory& prof = require_profiles(run);
  const std::size_t K = last_index_before(prof, t);
  const SimulationConfig& cfg = run.config;
  const SpaceGrid grid = cfg.space();
  const int n = cfg.model.n;
  const double mu = cfg.model.mu;
  const int M = grid.points;
  const double tK = prof.t[K];

  const double rho = cfg.data.R + tK + 1.0;
  std::vector<double> chi(M), lap_chi(M);
  for (int i = 0; i < M; ++i) {
    const double r = grid.node(i);
    const double s = r / rho;
    chi[i] = cutoff_profile(s);
    const double d1 = cutoff_profile_d1(s) / rho;
    const double d2 = cutoff_profile_d2(s) / (rho * rho);
    lap_chi[i] = r == 0.0 ? n * d2 : d2 + (n - 1) / r * d1;
  }
  const double tau = 1.0 + tK;
  auto theta = [&](double s) { return psi == WeakTestFunction::separable ? std::exp(-s / tau) : 1.0; };
  auto theta_d = [&](double s) {
    return psi == WeakTestFunction::separable ? -std::exp(-s / tau) / tau : 0.0;
  };

  std::vector<double> times(prof.t.begin(), prof.t.begin() + K + 1);
  std::vector<double> a(K + 1), b(K + 1), c(K + 1), f(M);
  for (std::size_t k = 0; k <= K; ++k) {
    const double s = prof.t[k];
    const auto& u = prof.u[k];
    const auto& ut = prof.u_t[k];
    for (int i = 0; i < M; ++i) f[i] = theta(s) * u[i] * lap_chi[i] + ut[i] * theta_d(s) * chi[i];
    a[k] = radial_integral(f, grid);
    for (int i = 0; i < M; ++i) f[i] = mu * ut[i] / (1.0 + s) * theta(s) * chi[i];
    b[k] = radial_integral(f, grid);
    for (int i = 0; i < M; ++i) f[i] = theta(s) * chi[i] * prof.source[k][i];
    c[k] = radial_integral(f, grid);
  }
  for (int i = 0; i < M; ++i) f[i] = prof.u_t[K][i] * theta(tK) * chi[i];
  const double end_term = radial_integral(f, grid);
  for (int i = 0; i < M; ++i) f[i] = prof.u_t[0][i] * theta(0.0) * chi[i];
  const double start_term = radial_integral(f, grid);

  WeakFormResidual w;
  w.lhs = end_term - start_term - trapezoid_over(times, a) + trapezoid_over(times, b);
  w.rhs = trapezoid_over(times, c);
  w.residual = std::abs(w.lhs - w.rhs);
  return w;
}

TestFunctionalReport test_functional_report(const RunRecord& run, double T,
                                            const SpatialCutoff& cutoff,
                                            const PowerTestFunction& w, double constant) {
  const SimulationConfig& cfg = run.config;
  const double mu = cfg.model.mu;
  if (!(mu > 1.0)) throw DomainError("test_functional_report: requires mu > 1");
  if (!(T > 0.0)) throw DomainError("test_functional_report: T must be positive");
  const ProfileHistory& prof = require_profiles(run);
  const std::size_t K = last_index_before(prof, T);
  const SpaceGrid grid = cfg.space();
  const int n = cfg.model.n;
  const double p = cfg.model.p;
  const double gamma = cfg.model.gamma;
  const int M = grid.points;
  const PowerTestFunction wt{T, w.sigma};
  const double alpha = 1.0 - gamma;

  std::vector<double> phil(M), lap(M);
  for (int i = 0; i < M; ++i) {
    const double r = grid.node(i);
    phil[i] = std::pow(cutoff.value(r, T), cutoff.ell);
    lap[i] = std::abs(cutoff.laplacian_of_power(n, r, T));
  }

  std::vector<double> times(prof.t.begin(), prof.t.begin() + K + 1);
  std::vector<double> iT(K + 1), j1(K + 1), j2(K + 1), j3(K + 1), f(M);
  for (std::size_t k = 0; k <= K; ++k) {
    const double t = prof.t[k];
    const auto& u = prof.u[k];
    for (int i = 0; i < M; ++i) f[i] = std::pow(std::abs(u[i]), p) * phil[i];
    const double a = radial_integral(f, grid);
    for (int i = 0; i < M; ++i) f[i] = std::abs(u[i]) * phil[i];
    const double b = radial_integral(f, grid);
    for (int i = 0; i < M; ++i) f[i] = std::abs(u[i]) * lap[i];
    const double c = radial_integral(f, grid);
    const double g = gauge(mu, t);
    const double tt = std::min(t, T);
    iT[k] = g * wt(tt) * a;
    j1[k] = g * std::abs(rl_right_derivative_power(wt, {alpha, 2}, tt)) * b;
    j2[k] = std::abs(mu - 2.0) * std::abs(rl_right_derivative_power(wt, {alpha, 1}, tt)) * b;
    j3[k] = g * std::abs(rl_right_derivative_power(wt, {alpha, 0}, tt)) * c;
  }

  TestFunctionalReport rep;
  rep.constant = constant;
  rep.I_T = trapezoid_over(times, iT);
  rep.J1 = trapezoid_over(times, j1);
  rep.J2 = trapezoid_over(times, j2);
  rep.J3 = trapezoid_over(times, j3);
  const auto& u0 = prof.u[0];
  const auto& u1 = prof.u_t[0];
  for (int i = 0; i < M; ++i) f[i] = (u1[i] + (mu - 1.0) * u0[i]) * phil[i];
  rep.I0_plus = radial_integral(f, grid);
  for (int i = 0; i < M; ++i) f[i] = (u1[i] - (mu - 1.0) * u0[i]) * phil[i];
  rep.I0_minus = radial_integral(f, grid);
  for (int i = 0; i < M; ++i) f[i] = u0[i] * phil[i];
  rep.u0_term = -std::pow(T, -2.0 + gamma) / (mu - 1.0) * radial_integral(f, grid);
  rep.inequality_holds =
      rep.I_T + rep.I0_plus <= constant * (rep.u0_term + rep.J1 + rep.J2 + rep.J3);
  return rep;
}

}  // namespace memwave
