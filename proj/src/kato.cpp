#include "memwave/kato.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "memwave/errors.hpp"
#include "memwave/math_util.hpp"

namespace memwave {

void KatoParams::validate() const {
  if (!(K0 > 0.0)) throw DomainError("kato.K0 must be positive");
  if (!(Ktilde0 > 0.0)) throw DomainError("kato.Ktilde0 must be positive");
  if (!(p > 1.0)) throw DomainError("kato.p must exceed 1");
  if (!(T0 >= 0.0)) throw DomainError("kato.T0 must be nonnegative");
  if (!(alpha0 >= 0.0) || !(beta0 >= 0.0)) {
    throw DomainError("kato.alpha0 and kato.beta0 must be nonnegative");
  }
  for (double v : {alpha0, beta0, K0, Ktilde0, a0, a1, a2, a3, p, T0}) {
    if (!std::isfinite(v)) throw DomainError("kato parameters must be finite");
  }
}

KatoParams normalize_negative_exponents(const KatoParams& params) {
  KatoParams out = params;
  for (double* a : {&out.a1, &out.a2, &out.a3}) {
    if (*a < 0.0) {
      out.a0 -= *a;
      *a = 0.0;
    }
  }
  return out;
}

ConditionCheck check_blowup_condition(const KatoParams& params) {
  ConditionCheck c;
  c.margin = (params.beta0 - params.alpha0) * (params.p - 1.0) + params.frame_gain() - params.a0;
  c.holds = c.margin > 0.0;
  return c;
}

double alpha_closed_form(const KatoParams& params, int j) {
  const double q = params.a0 / (params.p - 1.0);
  return (params.alpha0 + q) * std::pow(params.p, j) - q;
}

double beta_closed_form(const KatoParams& params, int j) {
  const double q = params.frame_gain() / (params.p - 1.0);
  return (params.beta0 + q) * std::pow(params.p, j) - q;
}

KatoTrace iterate_sequences(const KatoParams& params, int J) {
  params.validate();
  if (J < 1 || J > 200) throw DomainError("iterate_sequences: J must lie in [1, 200]");
  const double p = params.p;
  const double A = params.frame_gain();
  const double log_kt = std::log(params.Ktilde0);

  KatoTrace tr;
  tr.alpha.reserve(J + 1);
  tr.beta.reserve(J + 1);
  tr.log_K.reserve(J + 1);
  tr.alpha.push_back(params.alpha0);
  tr.beta.push_back(params.beta0);
  tr.log_K.push_back(std::log(params.K0));
  for (int j = 0; j < J; ++j) {
    const double b_next = A + p * tr.beta[j];
    tr.alpha.push_back(params.a0 + p * tr.alpha[j]);
    tr.beta.push_back(b_next);
    tr.log_K.push_back(p * tr.log_K[j] + log_kt - 3.0 * std::log(b_next));
  }

  tr.log_D = log_kt - 3.0 * std::log(params.beta0 + A / (p - 1.0));
  const double lp = std::log(p);
  const double threshold = tr.log_D / (3.0 * lp) - p / (p - 1.0);
  tr.j0 = std::max(1, static_cast<int>(std::ceil(threshold)));
  tr.log_E0 = tr.log_K[0] - 3.0 * p * lp / ((p - 1.0) * (p - 1.0)) + tr.log_D / (p - 1.0);
  return tr;
}

double summation_identity_residual(double p, int j) {
  if (!(p > 1.0) || j < 1) throw DomainError("summation identity: need p > 1 and j >= 1");
  double sum = 0.0;
  double pk = 1.0;
  for (int k = 0; k < j; ++k) {
    sum += (j - k) * pk;
    pk *= p;
  }
  const double formula = ((std::pow(p, j + 1) - p) / (p - 1.0) - j) / (p - 1.0);
  return std::abs(sum - formula);
}

double summation_identity_relative(double p, int j) {
  double sum = 0.0;
  for (int k = 0; k < j; ++k) sum += (j - k) * std::pow(p, k);
  return summation_identity_residual(p, j) / sum;
}

double inner_log(const KatoParams& params, const KatoTrace& trace, double t) {
  const double q = params.p - 1.0;
  const double c = params.alpha0 + params.beta0 + (params.a0 + params.frame_gain()) / q;
  const double e = check_blowup_condition(params).margin / q;
  return trace.log_E0 - c * std::log(2.0) + e * std::log(t);
}

double lower_envelope(const KatoParams& params, const KatoTrace& trace, double t, int j) {
  const double t_min = std::max(1.0, 2.0 * params.T0);
  if (!(t >= t_min)) throw DomainError("lower_envelope: t below max(1, 2 T0)");
  if (j < trace.j0) throw DomainError("lower_envelope: j below j0");
  const double q = params.p - 1.0;
  return std::pow(params.p, j) * inner_log(params, trace, t) + params.a0 / q * std::log1p(t) -
         params.frame_gain() / q * std::log(t - params.T0);
}

double blowup_time_bound(const KatoParams& params, const KatoTrace& trace) {
  const ConditionCheck c = check_blowup_condition(params);
  if (!c.holds) throw NoCertificateError("blow-up condition fails (margin <= 0); no time bound");
  const double t_min = std::max(1.0, 2.0 * params.T0);
  if (inner_log(params, trace, t_min) >= 0.0) return t_min;
  // The inner log is affine in ln t with positive slope, so the root is explicit.
  const double slope = c.margin / (params.p - 1.0);
  const double log_t = std::log(t_min) - inner_log(params, trace, t_min) / slope;
  if (log_t > std::log(std::numeric_limits<double>::max())) {
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_t);
}

double memory_constant(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("memory constant: gamma must lie in (0,1)");
  return 1.0 / std::tgamma(1.0 - gamma);
}

double holder_constant(int n, double R, double p) {
  if (!(R > 0.0)) throw DomainError("holder constant: R must be positive");
  return std::exp((1.0 - p) * (std::log(unit_ball_volume(n)) + n * std::log(R)));
}

KatoParams build_kato_instance(const ModelParams& model, double R, double T0, double C1) {
  model.validate();
  if (!(R >= 1.0)) throw DomainError("kato instance: R must be >= 1");
  if (!(C1 > 0.0)) throw DomainError("kato instance: C1 must be positive");
  const double n = model.n;
  const double mu = model.mu;
  const double g = model.gamma;
  const double p = model.p;
  const double cg = memory_constant(g);

  KatoParams k;
  k.alpha0 = mu + (n + mu - 1.0) * p / 2.0;
  k.beta0 = n + mu + 2.0 - g;
  k.K0 = C1 * cg / (n * (n + mu + 1.0) * (n + mu + 2.0));
  k.a0 = mu + g + n * (p - 1.0);
  k.a1 = 0.0;
  k.a2 = mu;
  k.a3 = 0.0;
  k.Ktilde0 = holder_constant(model.n, R, p) * cg;
  k.p = p;
  k.T0 = T0;
  k.validate();
  return k;
}

double final_quadratic(const ModelParams& model) {
  const double N = model.n + model.mu;
  const double p = model.p;
  return -(N - 1.0) / 2.0 * p * p + ((N + 1.0) / 2.0 + 1.0 - model.gamma) * p + 1.0;
}

namespace {

// Cumulative trapezoid of values * (1+t)^power from the first node.
std::vector<double> cumulative(std::span<const double> values, std::span<const double> t,
                               double power, double h) {
  std::vector<double> out(values.size(), 0.0);
  double prev = values[0] * std::pow(1.0 + t[0], power);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double cur = values[i] * std::pow(1.0 + t[i], power);
    out[i] = out[i - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return out;
}

}  // namespace

std::vector<double> nested_integral_oracle(const KatoParams& params,
                                           std::span<const double> F_initial,
                                           const TimeGrid& grid) {
  grid.validate();
  if (F_initial.size() != static_cast<std::size_t>(grid.steps) + 1) {
    throw DataError("nested_integral_oracle: sample count does not match grid");
  }
  const std::vector<double> t = grid.nodes();
  const double h = grid.spacing();
  std::vector<double> fp(F_initial.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (!std::isfinite(F_initial[i])) throw DataError("nested_integral_oracle: non-finite sample");
    fp[i] = std::pow(std::abs(F_initial[i]), params.p);
  }
  const std::vector<double> g3 = cumulative(fp, t, params.a3, h);
  const std::vector<double> g2 = cumulative(g3, t, params.a2, h);
  std::vector<double> g1 = cumulative(g2, t, params.a1, h);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    g1[i] *= params.Ktilde0 * std::pow(1.0 + t[i], -params.a0);
  }
  return g1;
}

std::vector<double> analytic_lower_bound(const KatoParams& params, const KatoTrace& trace, int j,
                                         const TimeGrid& grid) {
  if (j < 0 || j >= static_cast<int>(trace.log_K.size())) {
    throw DomainError("analytic_lower_bound: index outside the trace");
  }
  const std::vector<double> t = grid.nodes();
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - params.T0;
    if (dt <= 0.0) continue;
    out[i] = std::exp(trace.log_K[j] - trace.alpha[j] * std::log1p(t[i]) +
                      trace.beta[j] * std::log(dt));
  }
  return out;
}

double calibrate_c1(const ModelParams& model, std::span<const double> times,
                    std::span<const double> lp_mass, double T0) {
  if (times.size() != lp_mass.size()) throw DataError("calibrate_c1: trace lengths differ");
  const double n = model.n;
  const double power = n - 1.0 - (n + model.mu - 1.0) * model.p / 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < T0 || times[i] > 2.0 * T0) continue;
    best = std::min(best, lp_mass[i] / std::pow(1.0 + times[i], power));
  }
  if (!std::isfinite(best)) throw DataError("calibrate_c1: no samples in [T0, 2 T0]");
  return best;
}

}  // namespace memwave
