#pragma once

// Generalized Kato iteration lemma: a first lower bound
//   F(t) >= K0 (1+t)^{-α0} (t-T0)^{β0}
// combined with the nested-integral frame
//   F(t) >= K̃0 (1+t)^{-a0} ∫∫∫ (1+η)^{a1} (1+s)^{a2} (1+τ)^{a3} |F(τ)|^p
// forces F to blow up in finite time when the condition margin is positive.
// Every K_j, D and E0 is carried as a natural logarithm.

#include <span>
#include <vector>

#include "memwave/exponents.hpp"
#include "memwave/fraccalc.hpp"

namespace memwave {

struct KatoParams {
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double K0 = 1.0;
  double Ktilde0 = 1.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double p = 2.0;
  double T0 = 0.0;

  /// a1 + a2 + a3 + 3.
  double frame_gain() const { return a1 + a2 + a3 + 3.0; }
  void validate() const;
};

struct KatoTrace {
  std::vector<double> alpha;  ///< α_0 .. α_J
  std::vector<double> beta;   ///< β_0 .. β_J
  std::vector<double> log_K;  ///< log K_0 .. log K_J
  double log_D = 0.0;
  int j0 = 1;
  double log_E0 = 0.0;
};

struct ConditionCheck {
  bool holds = false;
  double margin = 0.0;  ///< (β0-α0)(p-1) + a1+a2+a3+3 - a0
};

/// Moves each negative a_k (k = 1,2,3) into a0. The margin is unchanged.
KatoParams normalize_negative_exponents(const KatoParams& params);

ConditionCheck check_blowup_condition(const KatoParams& params);

/// Runs the recursions up to index J (1 <= J <= 200).
KatoTrace iterate_sequences(const KatoParams& params, int J);

/// Closed forms α_j = (α0 + a0/(p-1)) p^j - a0/(p-1), likewise β_j.
double alpha_closed_form(const KatoParams& params, int j);
double beta_closed_form(const KatoParams& params, int j);

/// |Σ_{k<j} (j-k) p^k - ((p^{j+1}-p)/(p-1) - j)/(p-1)|.
double summation_identity_residual(double p, int j);
/// The same divided by the sum.
double summation_identity_relative(double p, int j);

/// log(E0 2^{-c} t^{e}) with c = α0+β0+(a0+a1+a2+a3+3)/(p-1) and e = margin/(p-1).
double inner_log(const KatoParams& params, const KatoTrace& trace, double t);

/// Logarithm of the final lower bound at time t and index j.
/// Requires t >= max(1, 2 T0) and j >= trace.j0.
double lower_envelope(const KatoParams& params, const KatoTrace& trace, double t, int j);

/// Smallest t >= max(1, 2 T0) with a nonnegative inner logarithm.
/// Throws NoCertificateError when the condition fails.
double blowup_time_bound(const KatoParams& params, const KatoTrace& trace);

/// c_γ = 1/Γ(1-γ).
double memory_constant(double gamma);
/// C0 = (v_n R^n)^{1-p}.
double holder_constant(int n, double R, double p);

/// The instance produced by the functional F(t) = ∫u dx for the model.
KatoParams build_kato_instance(const ModelParams& model, double R, double T0, double C1);

/// -(N-1)/2 p^2 + ((N+1)/2 + 1 - γ) p + 1 with N = n + μ.
double final_quadratic(const ModelParams& model);

/// One application of the frame map on a grid starting at T0 (trapezoid rule).
std::vector<double> nested_integral_oracle(const KatoParams& params,
                                           std::span<const double> F_initial,
                                           const TimeGrid& grid);

/// K_j (1+t)^{-α_j} (t-T0)^{β_j} at the grid nodes.
std::vector<double> analytic_lower_bound(const KatoParams& params, const KatoTrace& trace, int j,
                                         const TimeGrid& grid);

/// min over t in [T0, 2 T0] of mass(t) / (1+t)^{n-1-(n+μ-1)p/2}.
/// Throws DataError when no sample falls in the window.
double calibrate_c1(const ModelParams& model, std::span<const double> times,
                    std::span<const double> lp_mass, double T0);

}  // namespace memwave
