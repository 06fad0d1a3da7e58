#include "sechbloch/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <type_traits>

#include "sechbloch/analytic.hpp"
#include "sechbloch/bloch_ode.hpp"
#include "sechbloch/sweep.hpp"

namespace sechbloch::verify {

namespace {

using analytic::DimensionlessParams;
using analytic::w_infinity;

constexpr double kOracleAlphas[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
constexpr double kOracleGammas[] = {0.0, 0.05, 0.1, 0.5, 1.0, 2.0};

CheckResult upper_bound(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

CheckResult oracle_equivalence() {
  ode::IntegratorConfig cfg;  // rel 1e-10, abs 1e-12, L = 25
  double worst = 0.0;
  std::ostringstream where;
  for (double a : kOracleAlphas) {
    for (double g : kOracleGammas) {
      const double numeric = ode::final_inversion(ode::SechPulseModel::from_dimensionless(a, g), cfg);
      const double diff = std::abs(numeric - w_infinity({a, g}));
      if (diff > worst) {
        worst = diff;
        where.str("");
        where << "worst at alpha=" << a << " gamma=" << g;
      }
    }
  }
  return upper_bound("oracle_equivalence", worst, 1e-6, where.str());
}

CheckResult pi_pulse_point_values() {
  const double cases[][2] = {{1.0 / 38.0, 0.9}, {1.0 / 6.0, 0.5}, {0.5, 0.0}};
  double worst = 0.0;
  for (const auto& c : cases) worst = std::max(worst, std::abs(w_infinity({1.0, c[0]}) - c[1]));
  return upper_bound("pi_pulse_point_values", worst, 1e-12);
}

CheckResult integer_nodes() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) worst = std::max(worst, std::abs(w_infinity({double(n), 0.5})));
  return upper_bound("integer_alpha_node_gamma_half", worst, 1e-12);
}

CheckResult special_cases() {
  double worst = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (int j = 0; j <= 40; ++j) {
      const double g = 0.1 * j;
      if (n >= 1) {
        worst = std::max(worst, std::abs(analytic::w_integer_pulse(n, g) - w_infinity({double(n), g})));
      }
      worst = std::max(worst,
                       std::abs(analytic::w_half_integer_pulse(n, g) - w_infinity({n + 0.5, g})));
    }
  }
  return upper_bound("special_case_products", worst, 1e-12);
}

CheckResult coherent_limit() {
  double worst = 0.0;
  for (int j = 0; j <= 2000; ++j) {
    const double a = 0.01 * j;
    worst = std::max(worst, std::abs(w_infinity({a, 0.0}) - analytic::w_coherent(a)));
  }
  return upper_bound("coherent_limit", worst, 1e-11);
}

CheckResult form_equivalence(int samples) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> alpha_dist(0.0, 10.0);
  std::uniform_real_distribution<double> gamma_dist(0.0, 3.0);
  double worst = 0.0;
  int used = 0;
  while (used < samples) {
    const DimensionlessParams p{alpha_dist(rng), gamma_dist(rng)};
    const double x = 0.5 - p.gamma + p.alpha;
    if (std::round(x) <= 0.0 && std::abs(x - std::round(x)) < 1e-6) continue;
    worst = std::max(worst, std::abs(w_infinity(p) - analytic::w_infinity_cos_form(p)));
    ++used;
  }
  return upper_bound("reflection_form_equivalence", worst, 1e-10,
                     std::to_string(samples) + " random points");
}

CheckResult shifted_nodes() {
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    for (double g : {0.0, 0.1, 0.5, 1.0}) {
      worst = std::max(worst, std::abs(sweep::find_node(n, g).alpha_root - (n + 0.5 + g)));
    }
  }
  return upper_bound("shifted_nodes", worst, 1e-9);
}

CheckResult extremum_slopes() {
  const double g = 1e-4;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double slope = (w_infinity({n + g, g}) - sign) / g;
    const double expected = analytic::weak_extremum_slope(n);
    worst = std::max(worst, std::abs(slope / expected - 1.0));
  }
  return upper_bound("weak_dephasing_extremum_slopes", worst, 0.005, "relative deviation");
}

CheckResult strong_dephasing() {
  const double cases[][2] = {{1.0, 20.0}, {2.0, 40.0}, {1.0, 50.0}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const DimensionlessParams p{c[0], c[1]};
    worst = std::max(worst, std::abs(w_infinity(p) / analytic::w_strong_dephasing(p).value - 1.0));
  }
  return upper_bound("strong_dephasing_asymptote", worst, 0.02, "relative deviation");
}

CheckResult envelope_fit() {
  double worst = 0.0;
  for (double g : {0.25, 0.5, 1.0}) {
    const double slope = sweep::amplitude_envelope_fit(g, {20, 60});
    worst = std::max(worst, std::abs(slope / (-2.0 * g) - 1.0));
  }
  return upper_bound("large_area_envelope_exponent", worst, 0.02, "relative deviation");
}

std::vector<CheckResult> weak_order() {
  std::vector<CheckResult> out;
  for (double a : {0.5, 1.0, 2.5}) {
    const auto error = [a](double g) {
      const DimensionlessParams p{a, g};
      return std::abs(analytic::w_weak_dephasing(p).value - w_infinity(p));
    };
    double farthest = -1.0;
    double worst_ratio = 0.0;
    std::ostringstream ratios;
    ratios << "E(g/2)/E(g) =";
    for (double g : {0.08, 0.04, 0.02}) {
      const double r = error(g / 2.0) / error(g);
      ratios << ' ' << r;
      const double outside = std::max(0.15 - r, r - 0.40);
      if (outside > farthest) {
        farthest = outside;
        worst_ratio = r;
      }
    }
    ratios << " band [0.15, 0.40]";
    CheckResult c;
    std::ostringstream name;
    name << "weak_dephasing_order_alpha_" << a;
    c.name = name.str();
    c.measured = worst_ratio;
    c.tolerance = worst_ratio < 0.15 ? 0.15 : 0.40;
    c.passed = farthest <= 0.0;
    c.detail = ratios.str();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> time_dependent() {
  double worst_w = 0.0;
  double worst_v = 0.0;
  const double cases[][2] = {{0.5, 0.2}, {1.0, 0.5}, {2.0, 1.0}};
  for (const auto& c : cases) {
    const DimensionlessParams p{c[0], c[1]};
    ode::IntegratorConfig cfg;
    cfg.sample_count = 501;  // spacing 0.1 over [-25, 25]
    const ode::Trajectory traj =
        ode::integrate(ode::SechPulseModel::from_dimensionless(p.alpha, p.gamma), cfg);
    for (int k = -10; k <= 10; ++k) {
      const auto& s = traj[static_cast<std::size_t>(250 + 5 * k)];  // t = k / 2
      worst_w = std::max(worst_w, std::abs(analytic::w_of_t(p, s.t) - s.state.w));
      worst_v = std::max(worst_v, std::abs(analytic::v_of_t(p, s.t) - s.state.v));
    }
  }
  return {upper_bound("time_dependent_w", worst_w, 1e-7, "21 times, 3 parameter sets"),
          upper_bound("time_dependent_v", worst_v, 1e-6, "21 times, 3 parameter sets")};
}

}  // namespace

bool Report::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Report run(Level level) {
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  // A check that throws is reported as failed under its own name.
  auto add = [&](const char* name, auto&& make) {
    try {
      if constexpr (std::is_same_v<std::decay_t<decltype(make())>, CheckResult>) {
        report.checks.push_back(make());
      } else {
        for (auto& c : make()) report.checks.push_back(std::move(c));
      }
    } catch (const std::exception& e) {
      report.checks.push_back({name, 0.0, 0.0, false, e.what()});
    }
  };
  add("oracle_equivalence", oracle_equivalence);
  add("pi_pulse_point_values", pi_pulse_point_values);
  add("integer_alpha_node_gamma_half", integer_nodes);
  add("special_case_products", special_cases);
  add("coherent_limit", coherent_limit);
  add("reflection_form_equivalence",
      [&] { return form_equivalence(level == Level::full ? 10000 : 1000); });
  add("shifted_nodes", shifted_nodes);
  add("weak_dephasing_extremum_slopes", extremum_slopes);
  add("strong_dephasing_asymptote", strong_dephasing);
  if (level == Level::full) {
    add("large_area_envelope_exponent", envelope_fit);
    add("time_dependent_solution", time_dependent);
    add("weak_dephasing_order", weak_order);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace sechbloch::verify
