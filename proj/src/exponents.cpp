#include "memwave/exponents.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "memwave/errors.hpp"

namespace memwave {

Exponent Exponent::finite(double value) {
  if (!std::isfinite(value)) {
    throw std::logic_error("Exponent::finite called with a non-finite value");
  }
  return Exponent{value};
}

Exponent Exponent::one_plus_over_positive_part(double numerator, double denominator) {
  if (denominator <= 0.0) return infinite();
  return finite(1.0 + numerator / denominator);
}

double Exponent::value() const {
  if (!value_) throw std::logic_error("value() of an infinite exponent");
  return *value_;
}

bool operator<(const Exponent& a, const Exponent& b) {
  if (!a.value_) return false;
  if (!b.value_) return true;
  return *a.value_ < *b.value_;
}

std::string Exponent::to_string() const {
  if (!value_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << *value_;
  return os.str();
}

Exponent min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

void ModelParams::validate_without_p() const {
  if (n < 1) throw DomainError("model.n must be a positive integer");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("model.mu must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("model.gamma must lie in (0,1)");
}

void ModelParams::validate() const {
  validate_without_p();
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("model.p must exceed 1");
}

std::string to_string(MuRegime regime) {
  switch (regime) {
    case MuRegime::mu_le_1: return "mu_le_1";
    case MuRegime::mu_gt_1_ne_2: return "mu_gt_1_ne_2";
    case MuRegime::mu_eq_2: return "mu_eq_2";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::blowup_thm1: return "blowup_thm1";
    case Verdict::blowup_thm2: return "blowup_thm2";
    case Verdict::blowup_both: return "blowup_both";
    case Verdict::outside_known_range: return "outside_known_range";
  }
  return "?";
}

double fujita_exponent(int n) {
  if (n < 1) throw DomainError("fujita_exponent: n must be >= 1");
  return 1.0 + 2.0 / n;
}

namespace {

// Positive root of a p^2 - b p - 2 = 0 with a > 0, b > 0. The '+' branch has
// no cancellation for b > 0; one Newton step polishes the last ulp.
double positive_root(double a, double b) {
  double root = (b + std::sqrt(b * b + 8.0 * a)) / (2.0 * a);
  const double f = (a * root - b) * root - 2.0;
  const double df = 2.0 * a * root - b;
  if (df != 0.0) root -= f / df;
  return root;
}

}  // namespace

Exponent strauss_exponent(double n_eff) {
  if (!(n_eff >= 1.0)) throw DomainError("strauss_exponent: n_eff must be >= 1");
  if (n_eff == 1.0) return Exponent::infinite();
  return Exponent::finite(positive_root(n_eff - 1.0, n_eff + 1.0));
}

Exponent p0_exponent(double n_eff, double gamma) {
  if (!(n_eff >= 1.0)) throw DomainError("p0_exponent: n_eff must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("p0_exponent: gamma must lie in (0,1)");
  if (n_eff == 1.0) return Exponent::infinite();
  return Exponent::finite(positive_root(n_eff - 1.0, n_eff + 3.0 - 2.0 * gamma));
}

Exponent pgamma_exponent(int n, double gamma) {
  if (n < 1) throw DomainError("pgamma_exponent: n must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("pgamma_exponent: gamma must lie in (0,1)");
  return Exponent::one_plus_over_positive_part(2.0 * (2.0 - gamma), n - 2.0 * (1.0 - gamma));
}

double d0_parameter(int n, double gamma) {
  return 0.25 + std::sqrt(1.0 / 16.0 + (2.0 - gamma) / n);
}

double d1_parameter(int n, double mu, double gamma) {
  return 0.25 + std::sqrt(1.0 / 16.0 + (mu + 1.0) * (2.0 - gamma) / (2.0 * n));
}

ExponentReport shifted_exponents(const ModelParams& params) {
  params.validate_without_p();
  const double n = params.n;
  const double mu = params.mu;
  const double g = params.gamma;

  ExponentReport r;
  r.fujita = Exponent::finite(fujita_exponent(params.n));
  r.strauss = strauss_exponent(n + mu);
  r.pgamma = pgamma_exponent(params.n, g);
  r.p0 = p0_exponent(n + mu, g);
  r.d0 = d0_parameter(params.n, g);
  r.d1 = d1_parameter(params.n, mu, g);
  // n - 1 + γ > 0 for every admissible (n, γ).
  r.p1 = Exponent::finite(1.0 + (3.0 - g) / (n - 1.0 + g));
  r.p2 = Exponent::one_plus_over_positive_part(2.0 - g, n * r.d0 - 2.0 + g);
  r.p3 = Exponent::one_plus_over_positive_part(3.0 - g, n + mu + g - 2.0);
  r.p4 = Exponent::one_plus_over_positive_part(2.0 - g, n * r.d1 - 2.0 + g);
  r.sobolev_cap = params.n <= 2 ? Exponent::infinite() : Exponent::finite(n / (n - 2.0));
  return r;
}

MuRegime regime_of(double mu) {
  if (mu <= 1.0) return MuRegime::mu_le_1;
  if (mu == 2.0) return MuRegime::mu_eq_2;
  return MuRegime::mu_gt_1_ne_2;
}

Exponent theorem1_bound(const ModelParams& params) {
  const ExponentReport r = shifted_exponents(params);
  const int n = params.n;
  switch (regime_of(params.mu)) {
    case MuRegime::mu_gt_1_ne_2:
      if (n <= 2) return r.p1;
      if (n == 3) return min(r.p1, r.p2);
      return min(r.p2, r.sobolev_cap);
    case MuRegime::mu_eq_2:
      return min(r.p1, r.sobolev_cap);
    case MuRegime::mu_le_1:
      if (n == 1) return r.p3;
      if (n == 2) return min(r.p3, r.p4);
      if (n == 3) return min(min(r.p3, r.p4), Exponent::finite(3.0));
      return min(r.p4, r.sobolev_cap);
  }
  return Exponent::infinite();
}

Exponent theorem2_bound(const ModelParams& params) {
  params.validate_without_p();
  return p0_exponent(params.n + params.mu, params.gamma);
}

BlowupVerdict classify(const ModelParams& params) {
  params.validate();
  BlowupVerdict v;
  v.regime = regime_of(params.mu);
  v.thm1_bound = theorem1_bound(params);
  v.thm2_bound = theorem2_bound(params);
  const Exponent cap = shifted_exponents(params).sobolev_cap;

  v.thm1_applies = v.thm1_bound.admits(params.p);
  v.thm2_applies = v.thm2_bound.admits_strictly(params.p) && cap.admits(params.p);

  if (v.thm1_applies && v.thm2_applies) {
    v.verdict = Verdict::blowup_both;
  } else if (v.thm1_applies) {
    v.verdict = Verdict::blowup_thm1;
  } else if (v.thm2_applies) {
    v.verdict = Verdict::blowup_thm2;
  } else {
    v.verdict = Verdict::outside_known_range;
  }

  if (v.thm1_applies) {
    v.notes.push_back(params.mu > 1.0 ? "thm1 requires integral(u1 - (mu-1) u0) > 0"
                                      : "thm1 requires integral(u1) > 0");
  }
  if (v.thm2_applies) {
    v.notes.push_back("thm2 requires u0, u1 >= 0, nontrivial, supported in B_R with R >= 1");
  }
  return v;
}

double ParamRange::at(int i) const {
  if (count == 1) return open ? 0.5 * (lo + hi) : lo;
  if (open) return lo + (i + 0.5) * (hi - lo) / count;
  return lo + i * (hi - lo) / (count - 1);
}

void ParamRange::validate(const std::string& name) const {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError(name + " range must be finite");
  if (hi < lo) throw DomainError(name + " range is empty");
  if (count < 1) throw DomainError(name + " range has no samples");
  if (hi == lo && (count != 1 || open)) throw DomainError(name + " range is empty");
  if (hi > lo && count < 2) throw DomainError(name + " range needs at least 2 samples");
}

std::vector<RegionCell> region_grid(int n, const ParamRange& mu, const ParamRange& gamma,
                                    const ParamRange& p) {
  mu.validate("mu");
  gamma.validate("gamma");
  p.validate("p");

  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(mu.count) * gamma.count * p.count);
  for (int i = 0; i < mu.count; ++i) {
    for (int j = 0; j < gamma.count; ++j) {
      for (int k = 0; k < p.count; ++k) {
        RegionCell cell;
        cell.mu = mu.at(i);
        cell.gamma = gamma.at(j);
        cell.p = p.at(k);
        cell.verdict = classify(ModelParams{n, cell.mu, cell.gamma, cell.p});
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace memwave
