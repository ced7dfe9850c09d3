#include "memwave/fraccalc.hpp"

#include <algorithm>
#include <cmath>

#include "memwave/errors.hpp"
#include "memwave/math_util.hpp"
#include "memwave/quadrature.hpp"
#include "memwave/testfn.hpp"

namespace memwave {

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) out[i] = node(i);
  out.back() = t_end;
  return out;
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw DomainError("time grid needs t_end > t_start");
  }
  if (steps < 2) throw DomainError("time grid needs at least 2 steps");
}

void KernelOrder::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kernel order alpha must lie in (0,1)");
  if (k < 0) throw DomainError("kernel order k must be nonnegative");
}

double PowerTestFunction::operator()(double t) const {
  if (t >= horizon) return 0.0;
  return std::pow(1.0 - t / horizon, sigma);
}

double PowerTestFunction::default_sigma(double p, int k_max) {
  const double p_conj = p / (p - 1.0);
  return std::max(20.0, 4.0 * (k_max + 1) * p_conj);
}

namespace {

// (x+1)^b - x^b for x >= 0 without cancellation.
double forward_power_difference(double x, double b) {
  if (x == 0.0) return 1.0;
  return std::pow(x, b) * std::expm1(b * std::log1p(1.0 / x));
}

void require_finite(std::span<const double> samples) {
  for (double v : samples) {
    if (!std::isfinite(v)) throw DataError("fractional operator: non-finite sample");
  }
}

void require_matching(std::span<const double> samples, const TimeGrid& grid) {
  grid.validate();
  if (samples.size() != static_cast<std::size_t>(grid.steps) + 1) {
    throw DataError("fractional operator: sample count does not match grid");
  }
  require_finite(samples);
}

std::vector<double> reversed(std::span<const double> v) { return {v.rbegin(), v.rend()}; }

}  // namespace

ProductIntegrationWeights::ProductIntegrationWeights(double alpha, double spacing, int max_steps)
    : alpha_(alpha), h_(spacing), max_steps_(max_steps) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("product weights: alpha must lie in (0,2)");
  if (!(spacing > 0.0)) throw DomainError("product weights: spacing must be positive");
  if (max_steps < 1) throw DomainError("product weights: need at least one step");
  const double b = alpha + 1.0;
  scale_ = std::pow(h_, alpha) / (alpha * b);

  // Second difference of x^{α+1}, as a difference of stable forward differences.
  interior_.assign(static_cast<std::size_t>(max_steps) + 1, 0.0);
  double prev = forward_power_difference(0.0, b);
  for (int m = 1; m <= max_steps; ++m) {
    const double cur = forward_power_difference(m, b);
    interior_[m] = cur - prev;
    prev = cur;
  }

  // (n-1)^{b} - (n-1-α) n^α = n^b [ (1-1/n)^b - 1 + b/n ].
  first_.assign(static_cast<std::size_t>(max_steps) + 1, 0.0);
  if (max_steps >= 1) first_[1] = alpha;
  for (int n = 2; n <= max_steps; ++n) {
    const double x = 1.0 / n;
    first_[n] = std::pow(n, b) * (std::expm1(b * std::log1p(-x)) + b * x);
  }
}

double ProductIntegrationWeights::weight(int n, int j) const {
  if (n < 0 || n > max_steps_ || j < 0 || j > n) {
    throw DomainError("product weights: index out of range");
  }
  if (n == 0) return 0.0;
  if (j == n) return scale_;
  if (j == 0) return scale_ * first_[n];
  return scale_ * interior_[n - j];
}

std::vector<double> rl_left_integral(std::span<const double> samples, const TimeGrid& grid,
                                     double alpha) {
  require_matching(samples, grid);
  if (!(alpha > 0.0)) throw DomainError("rl_left_integral: alpha must be positive");
  const int N = grid.steps;
  const ProductIntegrationWeights w(alpha, grid.spacing(), N);
  const double inv_gamma = 1.0 / std::tgamma(alpha);
  std::vector<double> out(samples.size(), 0.0);
  for (int n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += w.weight(n, j) * samples[j];
    out[n] = acc * inv_gamma;
  }
  return out;
}

std::vector<double> rl_right_integral(std::span<const double> samples, const TimeGrid& grid,
                                      double alpha) {
  const std::vector<double> flipped = reversed(samples);
  return reversed(rl_left_integral(flipped, grid, alpha));
}

std::vector<double> finite_difference_derivative(std::span<const double> values, double spacing) {
  const std::size_t n = values.size();
  if (n < 3) throw DomainError("finite difference: need at least 3 values");
  std::vector<double> d(n);
  const auto& v = values;
  if (n < 5) {
    const double inv = 1.0 / (2.0 * spacing);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv;
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv;
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv;
    return d;
  }
  // Fourth order everywhere. Mixing orders leaves a jump in the truncation
  // error at the ends, and repeated differencing amplifies it by 1/h.
  const double inv = 1.0 / (12.0 * spacing);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) * inv;
  }
  d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) * inv;
  d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) * inv;
  d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) * inv;
  d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] +
              3.0 * v[n - 5]) * inv;
  return d;
}

double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * spacing;
}

std::vector<double> rl_left_derivative(std::span<const double> samples, const TimeGrid& grid,
                                       double alpha) {
  if (grid.steps < 8) throw DomainError("rl_left_derivative: grid too coarse (need N >= 8)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("rl_left_derivative: alpha must lie in (0,1)");
  const std::vector<double> integral = rl_left_integral(samples, grid, 1.0 - alpha);
  return finite_difference_derivative(integral, grid.spacing());
}

std::vector<double> rl_right_derivative(std::span<const double> samples, const TimeGrid& grid,
                                        double alpha) {
  // Reflection s = t_end + t_start - t turns -d/dt into d/ds.
  const std::vector<double> flipped = reversed(samples);
  return reversed(rl_left_derivative(flipped, grid, alpha));
}

std::vector<double> rl_right_derivative_numeric(std::span<const double> samples,
                                                const TimeGrid& grid, const KernelOrder& order) {
  order.validate();
  std::vector<double> d = rl_right_derivative(samples, grid, order.alpha);
  for (int i = 0; i < order.k; ++i) {
    d = finite_difference_derivative(d, grid.spacing());
    for (double& v : d) v = -v;
  }
  return d;
}

double rl_right_derivative_power(const PowerTestFunction& w, const KernelOrder& order, double t) {
  order.validate();
  const double T = w.horizon;
  if (!(T > 0.0)) throw DomainError("power test function: horizon must be positive");
  if (!(t >= 0.0 && t <= T)) throw DomainError("power test function: t outside [0,T]");
  const double s = order.k + order.alpha;
  const double e = w.sigma - s;
  if (!(e > 0.0)) throw DomainError("power test function: sigma must exceed k + alpha");
  if (t == T) return 0.0;
  const double log_c = log_gamma(w.sigma + 1.0).log_abs - log_gamma(w.sigma + 1.0 - s).log_abs;
  return std::exp(log_c - s * std::log(T) + e * std::log1p(-t / T));
}

IntegrationByPartsCheck check_integration_by_parts(std::span<const double> f,
                                                   std::span<const double> g, double alpha,
                                                   const TimeGrid& grid) {
  const std::vector<double> dg = rl_left_derivative(g, grid, alpha);
  const std::vector<double> df = rl_right_derivative(f, grid, alpha);
  std::vector<double> left(f.size()), right(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    left[i] = f[i] * dg[i];
    right[i] = g[i] * df[i];
  }
  IntegrationByPartsCheck c;
  c.lhs = trapezoid(left, grid.spacing());
  c.rhs = trapezoid(right, grid.spacing());
  c.residual = std::abs(c.lhs - c.rhs);
  const double scale = std::max(std::abs(c.lhs), std::abs(c.rhs));
  c.relative = scale > 0.0 ? c.residual / scale : 0.0;
  return c;
}

std::vector<double> lemma_integral_ratio(int k, double alpha, double p, LemmaVariant variant,
                                         double mu, std::span<const double> horizons,
                                         double sigma) {
  KernelOrder{alpha, k}.validate();
  if (!(p > 1.0)) throw DomainError("lemma_integral_ratio: p must exceed 1");
  const bool uses_mu = variant == LemmaVariant::weight_mu || variant == LemmaVariant::weight_mu_mixed;
  if (uses_mu && !(mu > 0.0)) throw DomainError("lemma_integral_ratio: mu must be positive");

  const double pc = p / (p - 1.0);
  if (sigma <= 0.0) sigma = PowerTestFunction::default_sigma(p, k);
  const double s = k + alpha;
  const double e = sigma - s * pc;
  if (!(e > 0.0)) throw DomainError("lemma_integral_ratio: sigma too small for this order");
  const double log_c = log_gamma(sigma + 1.0).log_abs - log_gamma(sigma + 1.0 - s).log_abs;

  double weight_power = 0.0;
  switch (variant) {
    case LemmaVariant::weight_1_plus_t: weight_power = 1.0; break;
    case LemmaVariant::weight_mixed: weight_power = -1.0 / (p - 1.0); break;
    case LemmaVariant::weight_mu: weight_power = mu; break;
    case LemmaVariant::weight_mu_mixed: weight_power = mu - pc; break;
  }

  std::vector<double> ratios;
  ratios.reserve(horizons.size());
  for (double T : horizons) {
    if (!(T > 1.0)) throw DomainError("lemma_integral_ratio: T must exceed 1");
    // w^{-1/(p-1)} |D^{k+α} w|^{p'} = C^{p'} T^{-(k+α)p'} (1 - t/T)^{σ-(k+α)p'}.
    // The common factor T^{-(k+α)p'} cancels against the bound.
    auto integrand = [&](double t) {
      return std::exp(weight_power * std::log1p(t) + e * std::log1p(-t / T));
    };
    std::vector<double> breaks{0.0};
    for (double b = 1.0; b < T; b *= 10.0) breaks.push_back(b);
    breaks.push_back(T);
    const double integral = std::exp(pc * log_c) * integrate_panels(integrand, breaks, 1e-12);

    double bound = 1.0;
    switch (variant) {
      case LemmaVariant::weight_1_plus_t: bound = T * T; break;
      case LemmaVariant::weight_mixed: bound = dp_factor(p, T, DpVariant::standard); break;
      case LemmaVariant::weight_mu: bound = std::pow(T, mu + 1.0); break;
      case LemmaVariant::weight_mu_mixed: bound = dp_factor(p, T, DpVariant::mu_weighted, mu); break;
    }
    ratios.push_back(integral / bound);
  }
  return ratios;
}

}  // namespace memwave
