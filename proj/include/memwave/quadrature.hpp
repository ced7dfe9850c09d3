#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <initializer_list>
#include <limits>
#include <span>

namespace memwave {

/// Adaptive Gauss-Kronrod (61-point) integration of a smooth integrand on [a,b].
/// Tolerances below 1e-13 are raised to it: the Kronrod error estimate sits near
/// roundoff there, and tighter requests only exhaust the depth.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13, unsigned max_depth = 12) {
  if (a == b) return 0.0;
  const double tol = std::max(rel_tol, 1e-13);
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

/// Integrates panel by panel over consecutive break points.
template <class F>
double integrate_panels(F&& f, std::span<const double> breaks, double rel_tol = 1e-13) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += integrate(f, breaks[i], breaks[i + 1], rel_tol);
  }
  return total;
}

}  // namespace memwave
