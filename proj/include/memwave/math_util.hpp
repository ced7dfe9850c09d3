#pragma once

namespace memwave {

struct SignedLogGamma {
  double log_abs = 0.0;
  int sign = 1;
};

/// log|Γ(x)| together with the sign of Γ(x).
SignedLogGamma log_gamma(double x);

/// Γ(a) / Γ(b) evaluated through log-gamma.
double gamma_ratio(double a, double b);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface measure of the unit sphere S^{dim} ⊂ R^{dim+1}; |S^0| = 2.
double sphere_measure(int dim);

}  // namespace memwave
