#include "memwave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memwave/errors.hpp"
#include "memwave/math_util.hpp"
#include "memwave/quadrature.hpp"

namespace memwave {

namespace {

// e^{-t (cosh z - 1)} cosh(ν z); the factor e^{-t} is applied by the caller.
double bessel_integrand(double nu, double t, double z) {
  const double sh = std::sinh(0.5 * z);
  return std::exp(-2.0 * t * sh * sh) * std::cosh(nu * z);
}

// Integrand relative to its value at z = 0 drops below this and never recovers.
constexpr double kTruncation = 1e-18;

}  // namespace

double bessel_k(double nu, double t, BesselVariant variant) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("bessel_k: t must be positive");
  if (!std::isfinite(nu)) throw DomainError("bessel_k: order must be finite");

  // The integrand can grow before it decays when |ν| > t; walk past its peak.
  double z_max = 1.0;
  while (z_max < 700.0) {
    const double v = bessel_integrand(nu, t, z_max);
    const double slope = bessel_integrand(nu, t, z_max + 1e-3) - v;
    if (v < kTruncation && slope <= 0.0) break;
    z_max += 1.0;
  }
  if (variant == BesselVariant::finite_limit) z_max = std::min(z_max, t);

  std::vector<double> breaks;
  for (double z = 0.0; z < z_max; z += 1.0) breaks.push_back(z);
  breaks.push_back(z_max);
  auto f = [&](double z) { return bessel_integrand(nu, t, z); };
  return std::exp(-t) * integrate_panels(f, breaks, 1e-13);
}

BesselDerivativeCheck bessel_k_derivative_check(double nu, double t, double h) {
  if (!(t > 2.0 * h)) throw DomainError("bessel_k_derivative_check: need t > h");
  const double k = bessel_k(nu, t);
  const double kp1 = bessel_k(nu + 1.0, t);
  const double km1 = bessel_k(nu - 1.0, t);
  const double deriv = (-bessel_k(nu, t + 2.0 * h) + 8.0 * bessel_k(nu, t + h) -
                        8.0 * bessel_k(nu, t - h) + bessel_k(nu, t - 2.0 * h)) /
                       (12.0 * h);
  const double scale = std::max({1.0, std::abs(k), std::abs(kp1)});

  BesselDerivativeCheck c;
  c.first_form = std::abs(deriv + kp1 - nu / t * k) / scale;
  c.second_form = std::abs(deriv + 0.5 * (kp1 + km1)) / scale;
  c.forms_gap = std::abs((nu / t * k - kp1) + 0.5 * (kp1 + km1)) / scale;
  c.residual = std::max(c.first_form, c.second_form);
  return c;
}

double eigenfunction_phi_scaled(int n, double r) {
  if (n < 1) throw DomainError("eigenfunction_phi: n must be >= 1");
  if (!(r >= 0.0)) throw DomainError("eigenfunction_phi: r must be nonnegative");
  if (n == 1) return 1.0 + std::exp(-2.0 * r);

  const int m = n - 2;
  auto f = [&](double theta) {
    const double s = std::sin(0.5 * theta);
    const double w = m == 0 ? 1.0 : std::pow(std::sin(theta), m);
    return std::exp(-2.0 * r * s * s) * w;
  };
  // Mass concentrates in a boundary layer of width ~ 1/sqrt(r) at θ = 0.
  std::vector<double> breaks{0.0};
  for (int k = 8; k >= 1; --k) breaks.push_back(std::numbers::pi * std::ldexp(1.0, -k));
  breaks.push_back(std::numbers::pi);
  return sphere_measure(n - 2) * integrate_panels(f, breaks, 1e-13);
}

double eigenfunction_phi(int n, double r) {
  if (n == 1) {
    if (!(r >= 0.0)) throw DomainError("eigenfunction_phi: r must be nonnegative");
    return 2.0 * std::cosh(r);
  }
  return std::exp(r) * eigenfunction_phi_scaled(n, r);
}

EigenResidual phi_eigen_residual(int n, std::span<const double> radii, double h) {
  EigenResidual res;
  for (double r : radii) {
    if (!(r >= 2.0 * h)) throw DomainError("phi_eigen_residual: radii must be >= 2h");
    const double f0 = eigenfunction_phi(n, r);
    const double fp = eigenfunction_phi(n, r + h);
    const double fm = eigenfunction_phi(n, r - h);
    const double fpp = eigenfunction_phi(n, r + 2.0 * h);
    const double fmm = eigenfunction_phi(n, r - 2.0 * h);
    const double d2 = (-fpp + 16.0 * fp - 30.0 * f0 + 16.0 * fm - fmm) / (12.0 * h * h);
    const double d1 = (-fpp + 8.0 * fp - 8.0 * fm + fmm) / (12.0 * h);
    const double err = std::abs(d2 + (n - 1) / r * d1 - f0);
    res.absolute = std::max(res.absolute, err);
    res.relative = std::max(res.relative, err / f0);
  }
  return res;
}

double aux_lambda(double mu, double t) {
  if (!(mu > 0.0)) throw DomainError("aux_lambda: mu must be positive");
  if (!(t > -1.0)) throw DomainError("aux_lambda: t must exceed -1");
  const double s = 1.0 + t;
  return std::pow(s, 0.5 * (mu + 1.0)) * bessel_k(0.5 * (mu - 1.0), s);
}

AuxProfile make_aux_profile(double mu, std::span<const double> times) {
  AuxProfile a;
  a.mu = mu;
  a.times.assign(times.begin(), times.end());
  a.values.reserve(times.size());
  for (double t : times) a.values.push_back(aux_lambda(mu, t));
  return a;
}

double lambda_ode_residual(double mu, std::span<const double> times, double h, bool five_point) {
  double worst = 0.0;
  for (double t : times) {
    const double s = 1.0 + t;
    const double l0 = aux_lambda(mu, t);
    double d1 = 0.0;
    double d2 = 0.0;
    const double lp = aux_lambda(mu, t + h);
    const double lm = aux_lambda(mu, t - h);
    if (five_point) {
      const double lpp = aux_lambda(mu, t + 2.0 * h);
      const double lmm = aux_lambda(mu, t - 2.0 * h);
      d1 = (-lpp + 8.0 * lp - 8.0 * lm + lmm) / (12.0 * h);
      d2 = (-lpp + 16.0 * lp - 30.0 * l0 + 16.0 * lm - lmm) / (12.0 * h * h);
    } else {
      d1 = (lp - lm) / (2.0 * h);
      d2 = (lp - 2.0 * l0 + lm) / (h * h);
    }
    const double r = s * s * d2 - mu * s * d1 + (mu - s * s) * l0;
    // λ decays like e^{-t}; scale by the terms so the measure stays relative.
    const double scale = s * s * std::abs(d2) + mu * s * std::abs(d1) + std::abs(mu - s * s) * std::abs(l0);
    worst = std::max(worst, scale > 0.0 ? std::abs(r) / scale : std::abs(r));
  }
  return worst;
}

}  // namespace memwave
