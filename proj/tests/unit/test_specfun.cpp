#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "oracles.hpp"
#include "sechbloch/errors.hpp"
#include "sechbloch/specfun.hpp"

using namespace sechbloch;
using namespace sechbloch::specfun;

namespace {

double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("ln_gamma at fixed points") {
  CHECK(std::abs(ln_gamma(1.0)) <= 1e-16);
  CHECK(std::abs(ln_gamma(2.0)) <= 1e-15);
  CHECK(std::abs(ln_gamma(0.5) - oracle::kLnSqrtPi) <= 1e-15);
  CHECK(rel_err(ln_gamma(10.5), oracle::ln_gamma_half_ladder(10)) <= 1e-13);
}

TEST_CASE("ln_gamma matches ladders on integers and half-integers up to 100") {
  for (int n = 1; n <= 99; ++n) {
    CAPTURE(n);
    CHECK(std::abs(ln_gamma(n + 0.5) - oracle::ln_gamma_half_ladder(n)) <=
          1e-13 * std::max(1.0, std::abs(oracle::ln_gamma_half_ladder(n))));
  }
  for (int n = 3; n <= 100; ++n) {
    CAPTURE(n);
    CHECK(rel_err(ln_gamma(n), oracle::ln_gamma_integer_ladder(n)) <= 1e-13);
  }
}

TEST_CASE("ln_gamma matches frozen high-precision values") {
  for (const auto& [x, want] : oracle::kLnGamma) {
    CAPTURE(x);
    CHECK(std::abs(ln_gamma(x) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("ln_gamma recurrence") {
  double worst = 0.0;
  for (double x = 0.5; x <= 50.0; x += 0.0731) {
    worst = std::max(worst, std::abs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("ln_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(ln_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("gamma and its poles") {
  CHECK(rel_err(specfun::gamma(5.0), 24.0) <= 1e-14);
  CHECK(rel_err(specfun::gamma(-0.5), -2.0 * std::sqrt(oracle::kPi)) <= 1e-13);
  CHECK_THROWS_AS(specfun::gamma(0.0), DomainError);
  CHECK_THROWS_AS(specfun::gamma(-3.0), DomainError);
}

TEST_CASE("recip_gamma zeros and values") {
  CHECK(recip_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-1.0) == 0.0);
  CHECK(recip_gamma(-7.0) == 0.0);
  for (const auto& [x, want] : oracle::kRecipGamma) {
    CAPTURE(x);
    CHECK(rel_err(recip_gamma(x), want) <= 1e-12);
  }
}

TEST_CASE("recip_gamma reflection") {
  double worst = 0.0;
  for (double x = 0.01; x < 1.0; x += 0.01) {
    worst = std::max(worst,
                     std::abs(recip_gamma(x) * recip_gamma(1.0 - x) * oracle::kPi /
                                  std::sin(oracle::kPi * x) -
                              1.0));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("log_abs_gamma sign") {
  const SignedLog a = log_abs_gamma(-0.5);
  CHECK(a.sign == -1);
  CHECK(std::abs(a.log_abs - std::log(2.0 * std::sqrt(oracle::kPi))) <= 1e-14);
  CHECK(log_abs_gamma(-1.5).sign == 1);
  CHECK(log_abs_gamma(3.2).sign == 1);
  // Far beyond the overflow of Gamma itself.
  CHECK(std::isfinite(log_abs_gamma(-300.5).log_abs));
  CHECK_THROWS_AS(log_abs_gamma(-2.0), DomainError);
}

TEST_CASE("digamma at fixed points") {
  CHECK(std::abs(digamma(1.0) + oracle::kEulerGamma) <= 1e-14);
  CHECK(std::abs(digamma(0.5) - (-1.9635100260214234794)) <= 1e-13);
  CHECK(std::abs(digamma(3.5) - oracle::digamma_half_ladder(3)) <= 1e-13);
  CHECK(std::abs(digamma(3.5) - (digamma(0.5) + 2.0 + 2.0 / 3.0 + 0.4)) <= 1e-13);
  for (const auto& [x, want] : oracle::kDigamma) {
    CAPTURE(x);
    CHECK(std::abs(digamma(x) - want) <= 1e-12);
  }
  for (const auto& [x, want] : oracle::kDigammaNegative) {
    CAPTURE(x);
    CHECK(std::abs(detail::digamma_any(x) - want) <= 1e-12);
  }
}

TEST_CASE("digamma recurrence and domain") {
  double worst = 0.0;
  for (double x = 0.25; x <= 50.0; x += 0.0517) {
    worst = std::max(worst, std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x));
  }
  CHECK(worst <= 1e-11);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-0.5), DomainError);
}

TEST_CASE("sin_pi and cos_pi have exact zeros") {
  for (int k = -6; k <= 6; ++k) {
    CHECK(sin_pi(k) == 0.0);
    CHECK(cos_pi(k + 0.5) == 0.0);
    CHECK(std::abs(cos_pi(k)) == 1.0);
  }
  CHECK(std::abs(sin_pi(0.25) - std::sqrt(0.5)) <= 2.3e-16);
  CHECK(std::abs(cos_pi(1.3) - std::cos(1.3 * oracle::kPi)) <= 1e-15);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(2.5, 0) == 1.0);
  CHECK(pochhammer(3.0, 4) == 360.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(-0.5, 2) == doctest::Approx(-0.25));
}

TEST_CASE("hyp2f1 trivial values") {
  CHECK(hyp2f1({0.7, -0.7, 1.2}, 0.0) == 1.0);
  CHECK(hyp2f1({3.0, 2.0, 4.5}, 0.0) == 1.0);
  for (double z : {0.0, 0.3, 0.9, 1.0}) {
    CHECK(hyp2f1({0.0, 0.0, 1.5}, z) == 1.0);
  }
}

TEST_CASE("hyp2f1 Gauss sum") {
  CHECK(std::abs(hyp2f1_at_unity({1.0, -1.0, 1.5}) - 1.0 / 3.0) <= 1e-14);
  CHECK(std::abs(hyp2f1({1.0, -1.0, 1.5}, 1.0) - 1.0 / 3.0) <= 1e-14);
  CHECK(std::abs(oracle::series_2f1(1.0, -1.0, 1.5, 1.0) - 1.0 / 3.0) <= 1e-15);
  CHECK(hyp2f1_at_unity({0.0, 0.0, 1.5}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hyp2f1_at_unity({2.0, -2.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(hyp2f1_at_unity({1.0, 0.5, 1.5}), DomainError);
  CHECK_THROWS_AS(hyp2f1_at_unity({1.0, 1.0, 1.5}), DomainError);
}

TEST_CASE("hyp2f1 agrees with the compensated series on z in [0.1, 0.9]") {
  double worst = 0.0;
  for (double alpha = 0.0; alpha <= 6.0; alpha += 0.35) {
    for (double gamma : {0.05, 0.2, 0.5, 0.93, 1.5, 2.0, 3.0}) {
      for (int iz = 1; iz <= 9; ++iz) {
        const double z = 0.1 * iz;
        const double got = hyp2f1({alpha, -alpha, 0.5 + gamma}, z);
        const double want = oracle::series_2f1(alpha, -alpha, 0.5 + gamma, z);
        worst = std::max(worst, std::abs(got - want));
      }
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("hyp2f1 at z = 1 matches the Gauss sum") {
  double worst = 0.0;
  for (double alpha = 0.0; alpha <= 6.0; alpha += 0.25) {
    for (double gamma = 0.05; gamma <= 3.0; gamma += 0.15) {
      const Hyp2F1Params p{alpha, -alpha, 0.5 + gamma};
      worst = std::max(worst, std::abs(hyp2f1(p, 1.0) - hyp2f1_at_unity(p)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("hyp2f1 approaches the Gauss sum as z -> 1") {
  for (double gamma : {0.05, 0.5, 1.0, 2.3}) {
    const Hyp2F1Params p{1.7, -1.7, 0.5 + gamma};
    CAPTURE(gamma);
    CHECK(std::abs(hyp2f1(p, 1.0 - 1e-13, 1e-13) - hyp2f1_at_unity(p)) <= 1e-6);
  }
}

TEST_CASE("hyp2f1 near z = 1, including degenerate c - a - b") {
  for (const auto& [a, b, c, z, want] : oracle::kHyp2F1NearOne) {
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(z);
    CHECK(std::abs(hyp2f1({a, b, c}, z) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }
  for (const auto& [a, b, c, zc, want] : oracle::kHyp2F1Complement) {
    CAPTURE(a);
    CAPTURE(c);
    CAPTURE(zc);
    CHECK(std::abs(hyp2f1({a, b, c}, 1.0 - zc, zc) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("hyp2f1 is continuous across integer c - a - b") {
  // The series oracle is still usable at z = 0.9.
  for (double nu : {1.0, 2.0, 3.0}) {
    for (double d : {0.0, 3e-5, -3e-5, 1e-4, -1e-4, 5e-4}) {
      const double c = nu + d;
      CAPTURE(c);
      CHECK(std::abs(hyp2f1({1.3, -1.3, c}, 0.9) - oracle::series_2f1(1.3, -1.3, c, 0.9)) <= 1e-10);
      CHECK(std::abs(hyp2f1({1.3, -1.3, c}, 0.8) - oracle::series_2f1(1.3, -1.3, c, 0.8)) <= 1e-10);
    }
  }
}

TEST_CASE("hyp2f1 domain errors") {
  CHECK_THROWS_AS(hyp2f1({1.0, -1.0, 1.5}, -0.1), DomainError);
  CHECK_THROWS_AS(hyp2f1({1.0, -1.0, 1.5}, 1.1), DomainError);
  CHECK_THROWS_AS(hyp2f1({1.0, -1.0, -2.0}, 0.5), DomainError);
  CHECK_THROWS_AS(hyp2f1({1.0, -1.0, 0.0}, 0.5), DomainError);
  CHECK_THROWS_AS(hyp2f1({1.0, 1.0, 1.5}, 1.0), DomainError);
}

}  // TEST_SUITE
