#pragma once

// Critical exponents and blow-up regime classification for
//   u_tt - Δu + μ/(1+t) u_t = c_γ ∫_0^t (t-τ)^{-γ} |u|^p dτ   in R^n.

#include <string>
#include <vector>

#include "memwave/exponent.hpp"

namespace memwave {

struct ModelParams {
  int n = 1;
  double mu = 1.0;
  double gamma = 0.5;
  double p = 2.0;

  /// Throws DomainError naming the offending field (e.g. "model.gamma must lie in (0,1)").
  void validate() const;
  /// Same as validate() but ignores p.
  void validate_without_p() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct ExponentReport {
  Exponent fujita = Exponent::infinite();       ///< 1 + 2/n
  Exponent strauss = Exponent::infinite();      ///< p_Str(n + μ)
  Exponent pgamma = Exponent::infinite();       ///< constant-damping memory exponent
  Exponent p0 = Exponent::infinite();           ///< p_0(n + μ, γ)
  Exponent p1 = Exponent::infinite();
  Exponent p2 = Exponent::infinite();
  Exponent p3 = Exponent::infinite();
  Exponent p4 = Exponent::infinite();
  double d0 = 0.0;
  double d1 = 0.0;
  Exponent sobolev_cap = Exponent::infinite();  ///< n/(n-2)_+
};

enum class MuRegime { mu_le_1, mu_gt_1_ne_2, mu_eq_2 };

enum class Verdict { blowup_thm1, blowup_thm2, blowup_both, outside_known_range };

struct BlowupVerdict {
  MuRegime regime = MuRegime::mu_le_1;
  Exponent thm1_bound = Exponent::infinite();
  Exponent thm2_bound = Exponent::infinite();
  bool thm1_applies = false;
  bool thm2_applies = false;
  Verdict verdict = Verdict::outside_known_range;
  /// Initial-data hypotheses attached to each applicable theorem (not evaluated here).
  std::vector<std::string> notes;
};

std::string to_string(MuRegime regime);
std::string to_string(Verdict verdict);

double fujita_exponent(int n);
/// Positive root of (n_eff-1)p^2 - (n_eff+1)p - 2 = 0; infinite at n_eff = 1.
Exponent strauss_exponent(double n_eff);
/// Positive root of (n_eff-1)p^2 - (n_eff+3-2γ)p - 2 = 0; infinite at n_eff = 1.
Exponent p0_exponent(double n_eff, double gamma);
/// 1 + 2(2-γ)/(n - 2(1-γ))_+.
Exponent pgamma_exponent(int n, double gamma);

double d0_parameter(int n, double gamma);
double d1_parameter(int n, double mu, double gamma);

/// Fills every exponent of the report. The p field of params is ignored.
ExponentReport shifted_exponents(const ModelParams& params);

/// Upper bound on p licensed by the test-function theorem (non-strict).
Exponent theorem1_bound(const ModelParams& params);
/// p_0(n+μ, γ); callers treat it as strict and also require p <= n/(n-2)_+.
Exponent theorem2_bound(const ModelParams& params);

MuRegime regime_of(double mu);

BlowupVerdict classify(const ModelParams& params);

/// A sampled parameter interval. Closed ranges include both endpoints;
/// open ranges sample cell midpoints. A degenerate range (lo == hi) allows count 1.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool open = false;

  double at(int i) const;
  void validate(const std::string& name) const;
};

struct RegionCell {
  double mu = 0.0;
  double gamma = 0.0;
  double p = 0.0;
  BlowupVerdict verdict;
};

/// Row-major grid: μ outermost, then γ, then p.
std::vector<RegionCell> region_grid(int n, const ParamRange& mu, const ParamRange& gamma,
                                    const ParamRange& p);

}  // namespace memwave
