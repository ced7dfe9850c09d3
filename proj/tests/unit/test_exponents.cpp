#include <doctest.h>

#include <cmath>
#include <random>

#include "memwave/errors.hpp"
#include "memwave/exponents.hpp"

using namespace memwave;

namespace {

// Independent root finder: bisection on q(p) = a p^2 - b p - 2 over (0, big).
double bisect_root(double a, double b) {
  double lo = 0.0, hi = 1e6;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (a * mid * mid - b * mid - 2.0 < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("Fujita exponent") {
  CHECK(fujita_exponent(1) == 3.0);
  CHECK(fujita_exponent(2) == 2.0);
  CHECK(fujita_exponent(4) == 1.5);
  CHECK_THROWS_AS(fujita_exponent(0), DomainError);
}

TEST_CASE("Strauss exponent") {
  CHECK(strauss_exponent(3.0).value() == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(strauss_exponent(2.0).value() ==
        doctest::Approx((3.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-14));
  CHECK_FALSE(strauss_exponent(1.0).is_finite());
  CHECK(strauss_exponent(7.3).value() == doctest::Approx(bisect_root(6.3, 8.3)).epsilon(1e-12));
}

TEST_CASE("p0 exponent") {
  CHECK(p0_exponent(5.0, 0.5).value() == doctest::Approx(bisect_root(4.0, 7.0)).epsilon(1e-13));
  CHECK(std::abs(p0_exponent(5.0, 0.5).value() - 2.0) < 1e-14);
  CHECK(p0_exponent(3.0, 0.5).value() ==
        doctest::Approx((5.0 + std::sqrt(41.0)) / 4.0).epsilon(1e-14));
  CHECK_FALSE(p0_exponent(1.0, 0.3).is_finite());
  CHECK_THROWS_AS(p0_exponent(3.0, 1.0), DomainError);
  CHECK_THROWS_AS(p0_exponent(0.5, 0.5), DomainError);
}

TEST_CASE("p0 is a root for random arguments") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ne(1.01, 12.0), g(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double n = ne(rng), gamma = g(rng);
    const double p = p0_exponent(n, gamma).value();
    CHECK(std::abs((n - 1) * p * p - (n + 3 - 2 * gamma) * p - 2) < 1e-12);
    CHECK(p > 1.0);
  }
}

TEST_CASE("p_gamma exponent") {
  CHECK_FALSE(pgamma_exponent(1, 0.5).is_finite());
  CHECK(pgamma_exponent(3, 0.5).value() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(pgamma_exponent(4, 1.0 - 1e-9).value() == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("shifted exponents at n=2, mu=3, gamma=0.5") {
  const ExponentReport r = shifted_exponents({2, 3.0, 0.5, 2.0});
  CHECK(r.p1.value() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(r.p1.value() == doctest::Approx(4.0 / 1.5).epsilon(1e-15));
  CHECK(r.p0.value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.d0 == doctest::Approx(0.25 + std::sqrt(1.0 / 16.0 + 0.75)).epsilon(1e-15));
  CHECK_FALSE(r.sobolev_cap.is_finite());
  CHECK(r.fujita.value() == 2.0);
}

TEST_CASE("gamma to one limits") {
  const ExponentReport r = shifted_exponents({2, 3.0, 1.0 - 1e-9, 2.0});
  CHECK(r.p1.value() == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.d0 == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("theorem bounds") {
  CHECK(theorem1_bound({2, 3.0, 0.5, 2.0}).value() == doctest::Approx(8.0 / 3.0));
  CHECK_FALSE(theorem1_bound({1, 0.5, 0.5, 2.0}).is_finite());
  CHECK(theorem1_bound({2, 2.0, 0.5, 2.0}).value() == doctest::Approx(8.0 / 3.0));
  CHECK(theorem2_bound({2, 3.0, 0.5, 2.0}).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(theorem2_bound({3, 2.0, 0.5, 2.0}).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(theorem2_bound({1, 0.0, 0.5, 2.0}), DomainError);
}

TEST_CASE("n >= 4 bounds respect the Sobolev cap") {
  for (double mu : {0.5, 2.0, 3.0}) {
    const Exponent b = theorem1_bound({5, mu, 0.4, 1.2});
    CHECK(b.is_finite());
    CHECK(b.value() <= 5.0 / 3.0 + 1e-15);
  }
}

TEST_CASE("classify") {
  CHECK(classify({2, 3.0, 0.5, 2.5}).verdict == Verdict::blowup_thm1);
  CHECK(classify({2, 3.0, 0.5, 1.5}).verdict == Verdict::blowup_both);
  CHECK(classify({2, 3.0, 0.5, 5.0}).verdict == Verdict::outside_known_range);
  // the upper bound is strict: p = p0 is outside it.
  const BlowupVerdict at_p0 = classify({2, 3.0, 0.5, 2.0});
  CHECK_FALSE(at_p0.thm2_applies);
  CHECK(at_p0.thm1_applies);
  CHECK(classify({2, 3.0, 0.5, 8.0 / 3.0}).thm1_applies);
  CHECK_THROWS_AS(classify({2, 3.0, 1.5, 2.0}), DomainError);
  CHECK(regime_of(1.0) == MuRegime::mu_le_1);
  CHECK(regime_of(2.0) == MuRegime::mu_eq_2);
}

TEST_CASE("region grid cardinality and monotonicity in p") {
  const ParamRange mu{0.1, 5.0, 10, false};
  const ParamRange gamma{0.0, 1.0, 10, true};
  CHECK(region_grid(2, mu, gamma, {2.0, 2.0, 1, false}).size() == 100);

  const ParamRange p{1.1, 6.0, 25, false};
  const auto cells = region_grid(2, mu, gamma, p);
  REQUIRE(cells.size() == 2500);
  for (std::size_t base = 0; base < cells.size(); base += 25) {
    bool seen_outside = false;
    for (int k = 0; k < 25; ++k) {
      const bool inside = cells[base + k].verdict.verdict != Verdict::outside_known_range;
      if (seen_outside) CHECK_FALSE(inside);
      seen_outside = seen_outside || !inside;
    }
  }
}

TEST_CASE("boundary at p = 8/3 along mu = 3, gamma = 0.5") {
  CHECK(classify({2, 3.0, 0.5, 8.0 / 3.0 - 1e-9}).verdict != Verdict::outside_known_range);
  CHECK(classify({2, 3.0, 0.5, 8.0 / 3.0 + 1e-9}).verdict == Verdict::outside_known_range);
}

TEST_CASE("param range sampling") {
  const ParamRange open{0.0, 1.0, 10, true};
  CHECK(open.at(0) == doctest::Approx(0.05));
  CHECK(open.at(9) == doctest::Approx(0.95));
  const ParamRange closed{0.1, 5.0, 10, false};
  CHECK(closed.at(0) == 0.1);
  CHECK(closed.at(9) == doctest::Approx(5.0));
  CHECK_THROWS_AS((ParamRange{1.0, 0.0, 3, false}.validate("x")), DomainError);
}

TEST_CASE("exponent ordering treats infinity as largest") {
  const Exponent inf = Exponent::infinite();
  const Exponent two = Exponent::finite(2.0);
  CHECK(two < inf);
  CHECK_FALSE(inf < two);
  CHECK(min(two, inf) == two);
  CHECK(max(two, inf) == inf);
  CHECK(inf.admits(1e300));
  CHECK(two.admits(2.0));
  CHECK_FALSE(two.admits_strictly(2.0));
  CHECK(inf.to_string() == "inf");
}
