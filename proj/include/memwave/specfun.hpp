#pragma once

// Modified Bessel function K_ν, the Laplacian eigenfunction Φ and the
// auxiliary profile λ(t) = (1+t)^{(μ+1)/2} K_{(μ-1)/2}(1+t).

#include <span>
#include <vector>

namespace memwave {

enum class BesselVariant {
  standard,            ///< ∫_0^∞ e^{-t cosh z} cosh(νz) dz
  finite_limit,  ///< the same integrand over [0, t]
};

/// K_ν(t) by adaptive Gauss-Kronrod quadrature. Throws DomainError for t <= 0.
double bessel_k(double nu, double t, BesselVariant variant = BesselVariant::standard);

struct BesselDerivativeCheck {
  double first_form = 0.0;   ///< |K'_ν + K_{ν+1} - (ν/t) K_ν|
  double second_form = 0.0;  ///< |K'_ν + (K_{ν+1} + K_{ν-1})/2|
  double forms_gap = 0.0;    ///< disagreement between the two right-hand sides
  double residual = 0.0;     ///< max(first_form, second_form)
};

/// Derivative identities with K'_ν by five-point central differences of step h.
/// All three quantities are divided by max(1, |K_ν|, |K_{ν+1}|).
BesselDerivativeCheck bessel_k_derivative_check(double nu, double t, double h = 1e-3);

/// Φ(r) = e^r + e^{-r} for n = 1, otherwise ∫_{S^{n-1}} e^{r ω_1} dσ_ω.
double eigenfunction_phi(int n, double r);
/// e^{-r} Φ(r); finite for large r.
double eigenfunction_phi_scaled(int n, double r);

struct EigenResidual {
  double absolute = 0.0;  ///< max |Φ'' + (n-1)/r Φ' - Φ|
  double relative = 0.0;  ///< max of the same divided by Φ(r)
};

/// Radial eigen-identity ΔΦ = Φ on the given radii (each r >= 2h) by five-point differences.
EigenResidual phi_eigen_residual(int n, std::span<const double> radii, double h = 1e-3);

/// λ(t) = (1+t)^{(μ+1)/2} K_{(μ-1)/2}(1+t).
double aux_lambda(double mu, double t);

struct AuxProfile {
  double mu = 1.0;
  std::vector<double> times;
  std::vector<double> values;
};

AuxProfile make_aux_profile(double mu, std::span<const double> times);

/// max over the times of |(1+t)^2 λ'' - μ(1+t) λ' + (μ - (1+t)^2) λ| divided by
/// the sum of the magnitudes of the three terms.
/// Derivatives by central differences of step h; `five_point` selects the
/// fourth-order stencils.
double lambda_ode_residual(double mu, std::span<const double> times, double h = 1e-3,
                           bool five_point = false);

}  // namespace memwave
