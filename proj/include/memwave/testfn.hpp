#pragma once

// Test-function bookkeeping: T-power exponents of the estimate terms, the
// feasibility of the time-scaling parameter d, the gauge g(t), the spatial
// cutoff φ_T and numerical checks of the weak formulation on simulated runs.

#include <optional>
#include <span>
#include <vector>

#include "memwave/fraccalc.hpp"
#include "memwave/wave_solver.hpp"

namespace memwave {

enum class DpVariant {
  standard,     ///< threshold p = 2
  mu_weighted,  ///< threshold p = 1 + 1/μ
};

enum class DpBranch { power, logarithm, constant };

/// Which branch of the T-factor applies. Equality with the threshold is
/// tested with a 1e-12 relative tolerance.
DpBranch dp_branch(double p, DpVariant variant, double mu = 0.0);

/// T^{(p-2)/(p-1)} / ln T / 1 (standard) or T^{μ-1/(p-1)} / ln T / 1 (μ-weighted).
double dp_factor(double p, double T, DpVariant variant, double mu = 0.0);

enum class GaugeRegime {
  gauge_over_1,   ///< g(t) = (t+1)/(μ-1), μ > 1
  gauge_under_1,  ///< g(t) = (1+t)^μ, μ <= 1
};

GaugeRegime gauge_regime(double mu);
double gauge(double mu, double t);

/// max |g'(t) + 1 - μ g(t)/(1+t)| with g' = 1/(μ-1). Requires μ > 1.
double gauge_identity_residual(double mu, std::span<const double> times);

struct PowerReport {
  GaugeRegime regime = GaugeRegime::gauge_over_1;
  double p_conj = 2.0;
  double d = 1.0;
  /// Exponents of T for the three estimate terms; exponent[2] is unused
  /// when has_third is false (μ = 2).
  double exponent[3] = {0.0, 0.0, 0.0};
  double slope[3] = {0.0, 0.0, 0.0};
  bool has_third = true;
  bool third_strict = false;  ///< at the threshold the third term needs < 0
  DpBranch branch = DpBranch::constant;
  bool ok[3] = {true, true, true};

  bool feasible() const { return ok[0] && ok[1] && (!has_third || ok[2]); }
};

PowerReport power_exponents(int n, double mu, double gamma, double p, double d);

/// The d the classification prescribes for (n, μ, p): 1 above the threshold,
/// d0(n) or d1(n) at or below it, and always d0/d1 for n >= 4 (d = 1 for μ = 2).
double case_candidate_d(int n, double mu, double gamma, double p);

struct FeasibleD {
  double d = 0.0;
  PowerReport report;
  double lo = 0.0;  ///< feasible set is an interval between lo and hi
  double hi = 0.0;
};

/// Intersects the half-lines {d > 0 : e_k(d) <= 0} (strict where required).
/// Returns the case-table candidate when it is feasible, otherwise an interior point.
std::optional<FeasibleD> feasible_d(int n, double mu, double gamma, double p);

/// φ: 1 on [0,1], 0 on [2,∞), degree-7 smoothstep in between (C^3).
double cutoff_profile(double s);
double cutoff_profile_d1(double s);
double cutoff_profile_d2(double s);

struct SpatialCutoff {
  double R = 1.0;
  double d = 1.0;
  double ell = 5.0;  ///< 2p' + 1 by default

  static SpatialCutoff with_default_ell(double R, double d, double p);
  /// φ_T(r) = φ(R r / T^d).
  double value(double r, double T) const;
  /// Δ(φ_T^ℓ) in R^n at radius r.
  double laplacian_of_power(int n, double r, double T) const;
};

enum class WeakTestFunction {
  cone_cap,   ///< ψ(s,x) = χ(|x|), χ = 1 on the support cone up to time t
  separable,  ///< ψ(s,x) = e^{-s/(1+t)} χ(|x|)
};

struct WeakFormResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// Both sides of the weak-solution identity at time t. Throws DataError when
/// the run holds no profiles or does not reach t.
WeakFormResidual weak_form_residual(const RunRecord& run, WeakTestFunction psi, double t);

struct TestFunctionalReport {
  double I_T = 0.0;
  double I0_plus = 0.0;   ///< ∫ (u1 + (μ-1) u0) φ_T^ℓ
  double I0_minus = 0.0;  ///< ∫ (u1 - (μ-1) u0) φ_T^ℓ
  double u0_term = 0.0;   ///< -T^{-2+γ}/(μ-1) ∫ u0 φ_T^ℓ
  double J1 = 0.0;
  double J2 = 0.0;
  double J3 = 0.0;
  double constant = 10.0;
  bool inequality_holds = false;  ///< I_T + I0_plus <= C (u0_term + J1 + J2 + J3)
};

/// Evaluates the μ > 1 estimate chain on a run with stored profiles.
TestFunctionalReport test_functional_report(const RunRecord& run, double T,
                                            const SpatialCutoff& cutoff,
                                            const PowerTestFunction& w, double constant = 10.0);

}  // namespace memwave
