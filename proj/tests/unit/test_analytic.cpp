#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <doctest.h>

#include "oracles.hpp"
#include "sechbloch/analytic.hpp"
#include "sechbloch/bloch_ode.hpp"
#include "sechbloch/errors.hpp"

using namespace sechbloch;
using namespace sechbloch::analytic;
using oracle::kPi;

namespace {

double ode_w(double alpha, double gamma) {
  return ode::final_inversion(ode::SechPulseModel::from_dimensionless(alpha, gamma), {});
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("w_coherent") {
  CHECK(w_coherent(1.0) == 1.0);
  CHECK(w_coherent(2.0) == -1.0);
  CHECK(w_coherent(0.5) == 0.0);
  CHECK_THROWS_AS(w_coherent(-1.0), DomainError);
}

TEST_CASE("w_infinity fixed points") {
  CHECK(std::abs(w_infinity({1.0, 1.0 / 6.0}) - 0.5) <= 1e-12);
  CHECK(std::abs(w_infinity({1.0, 1.0 / 38.0}) - 0.9) <= 1e-12);
  CHECK(std::abs(w_infinity({3.0, 0.5})) <= 1e-12);
  CHECK(std::abs(w_infinity({0.5, 0.5}) + 2.0 / kPi) <= 1e-12);
  CHECK(std::abs(ode_w(0.5, 0.5) + 2.0 / kPi) <= 1e-6);
  CHECK_THROWS_AS(w_infinity({-1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(w_infinity({1.0, -0.1}), DomainError);
}

TEST_CASE("w_infinity reduces to the lossless result") {
  double worst = 0.0;
  for (double a = 0.0; a <= 20.0; a += 0.0137) {
    worst = std::max(worst, std::abs(w_infinity({a, 0.0}) - w_coherent(a)));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("w_infinity stays in [-1, 1]") {
  for (double a = 0.0; a <= 20.0; a += 0.097) {
    for (double g = 0.0; g <= 5.0; g += 0.053) {
      const double w = w_infinity({a, g});
      REQUIRE(w >= -1.0);
      REQUIRE(w <= 1.0);
    }
  }
}

TEST_CASE("w_infinity_cos_form") {
  CHECK(std::abs(w_infinity_cos_form({1.0, 1.0 / 6.0}) - 0.5) <= 1e-12);
  CHECK(std::abs(w_infinity_cos_form({0.8, 0.3})) <= 1e-15);
  CHECK(std::abs(w_infinity_cos_form({2.0, 0.0}) + 1.0) <= 1e-12);
  // 1/2 - gamma + alpha = -1
  CHECK_THROWS_AS(w_infinity_cos_form({0.0, 1.5}), DomainError);
  CHECK_THROWS_AS(w_infinity_cos_form({0.5, 2.0 + 1e-11}), DomainError);
  double worst = 0.0;
  for (double a = 0.0; a <= 10.0; a += 0.113) {
    for (double g = 0.0; g <= 3.0; g += 0.071) {
      const double x = 0.5 - g + a;
      if (std::round(x) <= 0.0 && std::abs(x - std::round(x)) < 1e-6) continue;
      worst = std::max(worst, std::abs(w_infinity_cos_form({a, g}) - w_infinity({a, g})));
    }
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("integer and half-integer pulses") {
  for (double g : {0.0, 0.1, 0.37, 1.0, 2.5}) {
    CHECK(std::abs(w_integer_pulse(1, g) - (1.0 - 2.0 * g) / (1.0 + 2.0 * g)) <= 1e-15);
  }
  CHECK(w_integer_pulse(2, 0.5) == 0.0);
  CHECK(w_integer_pulse(1, 0.0) == 1.0);
  CHECK(w_half_integer_pulse(0, 0.0) == 0.0);
  CHECK(std::abs(w_half_integer_pulse(0, 0.5) + 2.0 / kPi) <= 1e-14);
  CHECK(w_half_integer_pulse(1, 1.0) == 0.0);
  CHECK_THROWS_AS(w_integer_pulse(0, 0.1), DomainError);
  CHECK_THROWS_AS(w_half_integer_pulse(-1, 0.1), DomainError);

  double worst = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (double g = 0.0; g <= 4.0 + 1e-9; g += 0.05) {
      if (n >= 1) worst = std::max(worst, std::abs(w_integer_pulse(n, g) - w_infinity({double(n), g})));
      worst = std::max(worst, std::abs(w_half_integer_pulse(n, g) - w_infinity({n + 0.5, g})));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma_epsilon") {
  CHECK(std::abs(gamma_epsilon(0.9) - 1.0 / 38.0) <= 1e-16);
  CHECK(std::abs(gamma_epsilon(0.5) - 1.0 / 6.0) <= 1e-16);
  CHECK(gamma_epsilon(0.0) == 0.5);
  CHECK_THROWS_AS(gamma_epsilon(-1.0), DomainError);
  for (double w : {0.9, 0.5, 0.0, -0.7}) {
    CHECK(std::abs(w_integer_pulse(1, gamma_epsilon(w)) - w) <= 1e-14);
  }
}

TEST_CASE("weak dephasing estimate") {
  const AsymptoticEstimate coherent = w_weak_dephasing({1.0, 0.0});
  CHECK(coherent.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(coherent.regime == Regime::weak_dephasing);
  const double g = 0.01;
  const AsymptoticEstimate e1 = w_weak_dephasing({1.0 + g, g});
  CHECK(e1.validity_hint == g);
  CHECK(std::abs(e1.value - (1.0 - 4.0 * g)) <= 1e-3);
  CHECK(std::abs(w_weak_dephasing({2.0 + g, g}).value - (-1.0 + 16.0 / 3.0 * g)) <= 1e-3);
  // Error at alpha = 1 is second order in gamma.
  const double e_big = std::abs(w_weak_dephasing({1.0, 0.04}).value - w_infinity({1.0, 0.04}));
  const double e_small = std::abs(w_weak_dephasing({1.0, 0.02}).value - w_infinity({1.0, 0.02}));
  CHECK(e_small / e_big == doctest::Approx(0.25).epsilon(0.1));
  // At half-integer alpha the leading error is third order.
  const double h_big = std::abs(w_weak_dephasing({0.5, 0.04}).value - w_infinity({0.5, 0.04}));
  const double h_small = std::abs(w_weak_dephasing({0.5, 0.02}).value - w_infinity({0.5, 0.02}));
  CHECK(h_small / h_big == doctest::Approx(0.125).epsilon(0.1));
}

TEST_CASE("weak extremum slopes") {
  CHECK(weak_extremum_slope(1) == doctest::Approx(-4.0));
  CHECK(weak_extremum_slope(2) == doctest::Approx(16.0 / 3.0));
  CHECK(weak_extremum_slope(3) == doctest::Approx(-92.0 / 15.0));
  CHECK(weak_extremum_slope(4) == doctest::Approx(704.0 / 105.0));
  CHECK(w_weak_extremum(1, 0.0) == 1.0);
  CHECK(w_weak_extremum(2, 0.0) == -1.0);
  CHECK(w_weak_extremum(3, 0.01) == doctest::Approx(1.0 - 0.92 / 15.0 * 1.0));
  CHECK_THROWS_AS(weak_extremum_slope(0), DomainError);
}

TEST_CASE("strong dephasing estimate") {
  for (auto [a, g] : {std::pair{1.0, 20.0}, std::pair{2.0, 40.0}}) {
    const AsymptoticEstimate e = w_strong_dephasing({a, g});
    CHECK(e.value == doctest::Approx(-std::exp(-a * a / g)).epsilon(1e-15));
    CHECK(e.validity_hint == doctest::Approx(1.0 / g));
    CHECK(std::abs(w_infinity({a, g}) / e.value - 1.0) <= 0.02);
  }
  CHECK(w_strong_dephasing({0.0, 3.0}).value == -1.0);
  CHECK(w_strong_dephasing({0.0, 0.0}).value == -1.0);
}

TEST_CASE("overdamping: w(1, gamma) falls monotonically towards -1") {
  double prev = w_infinity({1.0, 1.0});
  for (double g = 1.25; g <= 200.0; g *= 1.25) {
    const double w = w_infinity({1.0, g});
    CHECK(w < prev);
    prev = w;
  }
  CHECK(prev > -1.0);
  CHECK(prev < -0.99);
}

TEST_CASE("large area estimate") {
  for (double a : {0.3, 2.0, 7.25}) {
    CHECK(std::abs(w_large_area({a, 0.0}).value - w_coherent(a)) <= 1e-12);
  }
  const auto envelope = [](double a) {
    const AsymptoticEstimate e = w_large_area({a, 0.5});
    return e.value / std::cos(kPi * (a - 0.5));
  };
  CHECK(envelope(40.0) / envelope(20.0) == doctest::Approx(0.5).epsilon(1e-12));
  const AsymptoticEstimate e = w_large_area({50.0, 0.3});
  CHECK(e.validity_hint == doctest::Approx(1.0 / 2500.0));
  CHECK(std::abs(e.value / w_infinity({50.0, 0.3}) - 1.0) <= 0.01);
}

TEST_CASE("area_epsilon") {
  // Quoted thresholds 3.18 pi, 415 pi and 1.58e9 pi correspond to these gamma.
  CHECK(area_epsilon(0.1, 0.5) / kPi == doctest::Approx(3.18).epsilon(0.01));
  CHECK(area_epsilon(0.1, 0.15) / kPi == doctest::Approx(415.0).epsilon(0.01));
  CHECK(area_epsilon(0.1, 0.05) / kPi == doctest::Approx(1.58e9).epsilon(0.02));
  // Closed form pinned independently: (pi eps / Gamma(1/2+g)^2)^(-1/(2g)) for g = 1.
  CHECK(area_epsilon(0.1, 1.0) / kPi ==
        doctest::Approx(std::pow(kPi * 0.1 / (kPi / 4.0), -0.5)).epsilon(1e-13));
  CHECK_THROWS_AS(area_epsilon(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(area_epsilon(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(area_epsilon(1.0, 1.0), DomainError);
}

TEST_CASE("equal superposition areas are zeros of w") {
  CHECK(equal_superposition_area(0, 0.0) == doctest::Approx(kPi / 2.0));
  CHECK(equal_superposition_area(0, 1.0) == doctest::Approx(kPi));
  CHECK(equal_superposition_area(2, 0.4) == doctest::Approx(2.7 * kPi));
  CHECK(std::abs(w_infinity({equal_superposition_area(2, 0.4) / kPi, 0.2})) <= 1e-10);
  CHECK_THROWS_AS(equal_superposition_area(-1, 0.0), DomainError);
  CHECK_THROWS_AS(equal_superposition_area(0, -1.0), DomainError);
}

TEST_CASE("node law") {
  for (double g = 0.0; g <= 2.0; g += 0.0625) {
    for (int n = 0; n <= 6; ++n) {
      const double a = n + 0.5 + g;
      CAPTURE(g);
      CAPTURE(n);
      CHECK(std::abs(w_infinity({a, g})) <= 1e-10);
      CHECK(w_infinity({a - 0.01, g}) * w_infinity({a + 0.01, g}) < 0.0);
    }
  }
}

TEST_CASE("amplitude at successive extrema does not grow") {
  for (double g : {0.05, 0.3, 1.0}) {
    double prev = 2.0;
    for (int n = 1; n <= 30; ++n) {
      const double amp = std::abs(w_infinity({n + g, g}));
      CHECK(amp <= prev);
      prev = amp;
    }
  }
}

TEST_CASE("w_of_t boundaries") {
  for (auto p : {DimensionlessParams{1.0, 0.2}, DimensionlessParams{3.3, 0.0},
                 DimensionlessParams{0.4, 2.0}}) {
    CHECK(std::abs(w_of_t(p, -30.0) + 1.0) <= 1e-10);
    CHECK(std::abs(w_of_t(p, 30.0) - w_infinity(p)) <= 1e-9);
  }
  CHECK(std::abs(w_of_t({1.0, 0.0}, 0.0)) <= 1e-14);
  CHECK_THROWS_AS(w_of_t({1.0, 0.0}, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("v_of_t values") {
  CHECK(std::abs(v_of_t({1.0, 0.0}, 0.0) - 1.0) <= 1e-14);
  for (auto p : {DimensionlessParams{1.0, 0.2}, DimensionlessParams{2.5, 0.0},
                 DimensionlessParams{0.4, 2.0}}) {
    CHECK(std::abs(v_of_t(p, -30.0)) <= 1e-9);
  }
  // Coherence decays like exp(-2 gamma t) after the pulse; it survives without dephasing.
  CHECK(std::abs(v_of_t({1.0, 0.5}, 30.0)) <= 1e-9);
  CHECK(std::abs(v_of_t({1.3, 0.0}, 30.0) - std::sin(1.3 * kPi)) <= 1e-12);
  CHECK(v_of_t({1.3, 0.0}, 400.0) == doctest::Approx(std::sin(1.3 * kPi)));

  ode::IntegratorConfig cfg;
  const auto model = ode::SechPulseModel::from_dimensionless(0.5, 0.3);
  const auto traj = ode::integrate_span(model.shape(), kGroundState, -25.0, 0.0, cfg);
  CHECK(std::abs(v_of_t({0.5, 0.3}, 0.0) - traj.back().state.v) <= 1e-8);
}

TEST_CASE("dw/dt = Omega v") {
  const double h = 1e-5;
  for (auto p : {DimensionlessParams{0.5, 0.2}, DimensionlessParams{1.7, 0.9},
                 DimensionlessParams{3.0, 0.05}}) {
    for (double t : {-2.0, -0.4, 0.0, 0.7, 3.1}) {
      const double dw = (w_of_t(p, t + h) - w_of_t(p, t - h)) / (2.0 * h);
      const double rhs = p.alpha / std::cosh(t) * v_of_t(p, t);
      CAPTURE(p.alpha);
      CAPTURE(t);
      CHECK(std::abs(dw - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("state_of_t") {
  const BlochState s = state_of_t({1.2, 0.3}, 0.4);
  CHECK(s.u == 0.0);
  CHECK(s.v == v_of_t({1.2, 0.3}, 0.4));
  CHECK(s.w == w_of_t({1.2, 0.3}, 0.4));
}

TEST_CASE("regime names") {
  CHECK(to_string(Regime::weak_dephasing) == "weak_dephasing");
  CHECK(to_string(Regime::strong_dephasing) == "strong_dephasing");
  CHECK(to_string(Regime::large_area) == "large_area");
}

}  // TEST_SUITE
