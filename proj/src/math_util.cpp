#include "memwave/math_util.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "memwave/errors.hpp"

namespace memwave {

SignedLogGamma log_gamma(double x) {
  int sign = 1;
  const double value = boost::math::lgamma(x, &sign);
  return {value, sign};
}

double gamma_ratio(double a, double b) {
  const SignedLogGamma ga = log_gamma(a);
  const SignedLogGamma gb = log_gamma(b);
  return ga.sign * gb.sign * std::exp(ga.log_abs - gb.log_abs);
}

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("unit_ball_volume: n must be >= 1");
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - log_gamma(half + 1.0).log_abs);
}

double sphere_measure(int dim) {
  if (dim < 0) throw DomainError("sphere_measure: dimension must be >= 0");
  const double half = 0.5 * (dim + 1);
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - log_gamma(half).log_abs);
}

}  // namespace memwave
