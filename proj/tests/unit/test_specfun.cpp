#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "memwave/errors.hpp"
#include "memwave/specfun.hpp"

using namespace memwave;

TEST_CASE("K_1/2 closed form") {
  CHECK(bessel_k(0.5, 2.0) == doctest::Approx(std::sqrt(std::numbers::pi / 4.0) * std::exp(-2.0)).epsilon(1e-12));
  CHECK(bessel_k(0.5, 2.0) == doctest::Approx(0.119938).epsilon(1e-5));
  for (double t = 0.5; t <= 20.0; t += 0.25) {
    const double exact = std::sqrt(std::numbers::pi / (2.0 * t)) * std::exp(-t);
    CHECK(std::abs(bessel_k(0.5, t) / exact - 1.0) < 1e-8);
  }
}

TEST_CASE("K_nu against an independent library") {
  for (double nu : {0.0, 0.25, 1.0, 1.5, 2.5, 4.0}) {
    for (double t : {0.1, 0.7, 3.0, 12.0, 40.0}) {
      CHECK(bessel_k(nu, t) == doctest::Approx(boost::math::cyl_bessel_k(nu, t)).epsilon(1e-11));
    }
  }
  // K is even in its order.
  CHECK(bessel_k(-1.5, 2.0) == doctest::Approx(bessel_k(1.5, 2.0)).epsilon(1e-14));
}

TEST_CASE("large-argument asymptotics") {
  for (double t = 10.0; t <= 60.0; t += 5.0) {
    const double ratio = bessel_k(0.5, t) * std::sqrt(2.0 * t / std::numbers::pi) * std::exp(t);
    CHECK(std::abs(ratio - 1.0) <= 2.0 / t);
  }
}

TEST_CASE("finite-limit variant") {
  CHECK(std::abs(bessel_k(1.0, 10.0) -
                 bessel_k(1.0, 10.0, BesselVariant::finite_limit)) < 1e-12);
  // With a short range the truncation shows.
  CHECK(std::abs(bessel_k(1.0, 0.2) - bessel_k(1.0, 0.2, BesselVariant::finite_limit)) >
        1e-3);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
}

TEST_CASE("derivative identities") {
  CHECK(bessel_k_derivative_check(0.5, 5.0).residual <= 1e-6);
  CHECK(bessel_k_derivative_check(0.0, 3.0).forms_gap <= 1e-10);
  for (double nu : {0.25, 1.0, 2.5}) {
    for (double t : {0.5, 2.0, 15.0}) CHECK(bessel_k_derivative_check(nu, t).residual <= 1e-6);
  }
  // Halving h shrinks the differencing error.
  const double coarse = bessel_k_derivative_check(1.0, 1.0, 0.1).residual;
  const double fine = bessel_k_derivative_check(1.0, 1.0, 0.05).residual;
  CHECK(fine < coarse / 4.0);
}

TEST_CASE("eigenfunction Phi") {
  CHECK(eigenfunction_phi(1, 0.0) == 2.0);
  CHECK(eigenfunction_phi(3, 1.0) ==
        doctest::Approx(4.0 * std::numbers::pi * std::sinh(1.0)).epsilon(1e-12));
  CHECK(eigenfunction_phi(3, 1.0) == doctest::Approx(14.7680).epsilon(1e-4));
  // n = 2 reduces to 2π I_0(r).
  for (double r : {0.3, 2.0, 7.0}) {
    CHECK(eigenfunction_phi(2, r) ==
          doctest::Approx(2.0 * std::numbers::pi * boost::math::cyl_bessel_i(0.0, r)).epsilon(1e-12));
  }
  for (int n : {2, 3, 5}) {
    double lo = 1e300, hi = 0.0;
    for (double r = 10.0; r <= 30.0; r += 1.0) {
      const double v = eigenfunction_phi_scaled(n, r) * std::pow(r, 0.5 * (n - 1));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 1.5);
  }
}

TEST_CASE("Phi eigen residual") {
  std::vector<double> r1, r3;
  for (double r = 0.1; r <= 5.0 + 1e-12; r += 0.1) r1.push_back(r);
  for (double r = 0.5; r <= 10.0 + 1e-12; r += 0.25) r3.push_back(r);
  CHECK(phi_eigen_residual(1, r1).absolute <= 1e-6);
  CHECK(phi_eigen_residual(3, r3).relative <= 1e-5);
  const double coarse = phi_eigen_residual(3, std::vector<double>{2.0}, 0.1).absolute;
  const double fine = phi_eigen_residual(3, std::vector<double>{2.0}, 0.05).absolute;
  CHECK(fine < coarse / 4.0);
}

TEST_CASE("auxiliary profile lambda") {
  for (double mu : {0.5, 2.0, 4.0}) {
    CHECK(aux_lambda(mu, 0.0) == doctest::Approx(bessel_k(0.5 * (mu - 1.0), 1.0)).epsilon(1e-15));
    CHECK(aux_lambda(mu, 20.0) < aux_lambda(mu, 10.0));
  }
  std::vector<double> t;
  for (int i = 0; i <= 200; ++i) t.push_back(0.1 * i);
  CHECK(lambda_ode_residual(2.0, t) <= 1e-6);
  CHECK(lambda_ode_residual(2.0, t, 1e-3, true) <= 1e-6);
  const AuxProfile prof = make_aux_profile(2.0, t);
  CHECK(prof.values.size() == t.size());
  CHECK(prof.values[0] == aux_lambda(2.0, 0.0));
}
