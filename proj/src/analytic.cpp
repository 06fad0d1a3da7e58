#include "sechbloch/analytic.hpp"

#include <cmath>
#include <limits>

#include "sechbloch/errors.hpp"
#include "sechbloch/specfun.hpp"

namespace sechbloch::analytic {

using specfun::kPi;
using specfun::ln_gamma;

namespace {

constexpr double kLogPi = 1.144729885849400174143427351353058712;
constexpr double kCosFormPoleBand = 1e-9;

void check_params(const DimensionlessParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.gamma) || p.alpha < 0.0 || p.gamma < 0.0) {
    throw DomainError("requires finite alpha >= 0 and gamma >= 0");
  }
}

void check_gamma(double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("requires finite gamma >= 0");
}

// z = (tanh(tau) + 1) / 2 and its complement, both without cancellation.
struct TimeMap {
  double z;
  double zc;
};

TimeMap time_map(double tau) {
  if (!std::isfinite(tau)) throw DomainError("time must be finite");
  return {1.0 / (1.0 + std::exp(-2.0 * tau)), 1.0 / (1.0 + std::exp(2.0 * tau))};
}

}  // namespace

double DimensionlessParams::area() const noexcept { return kPi * alpha; }

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::weak_dephasing:
      return "weak_dephasing";
    case Regime::strong_dephasing:
      return "strong_dephasing";
    case Regime::large_area:
      return "large_area";
  }
  return "unknown";
}

double w_coherent(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw DomainError("w_coherent: requires alpha >= 0");
  return -specfun::cos_pi(alpha);
}

double w_infinity(const DimensionlessParams& p) {
  check_params(p);
  const double nu = 0.5 + p.gamma;
  const double lead = 2.0 * ln_gamma(nu) - ln_gamma(nu + p.alpha);
  const double x = nu - p.alpha;
  if (x > 0.0) {
    return -std::exp(lead - ln_gamma(x));
  }
  // 1/G(x) = sin(pi x) G(1-x) / pi for x <= 0; exact zero at the poles.
  const double s = specfun::sin_pi(x);
  if (s == 0.0) return 0.0;
  return -(s / kPi) * std::exp(lead + ln_gamma(1.0 - x));
}

double w_infinity_cos_form(const DimensionlessParams& p) {
  check_params(p);
  const double nu = 0.5 + p.gamma;
  const double x = 0.5 - p.gamma + p.alpha;
  if (std::round(x) <= 0.0 && std::abs(x - std::round(x)) < kCosFormPoleBand) {
    throw DomainError("w_infinity_cos_form: 1/2 - gamma + alpha at a pole of Gamma");
  }
  const specfun::SignedLog g = specfun::log_abs_gamma(x);
  const double magnitude = std::exp(2.0 * ln_gamma(nu) + g.log_abs - ln_gamma(nu + p.alpha) - kLogPi);
  return -g.sign * magnitude * std::cos(kPi * (p.alpha - p.gamma));
}

double w_integer_pulse(int n, double gamma) {
  if (n < 1) throw DomainError("w_integer_pulse: requires n >= 1");
  check_gamma(gamma);
  double product = 1.0;
  for (int k = 0; k < n; ++k) {
    product *= (2.0 * gamma - 1.0 - 2.0 * k) / (2.0 * gamma + 1.0 + 2.0 * k);
  }
  return -product;
}

double w_half_integer_pulse(int n, double gamma) {
  if (n < 0) throw DomainError("w_half_integer_pulse: requires n >= 0");
  check_gamma(gamma);
  double product = 1.0;
  for (int k = 1; k <= n; ++k) product *= (gamma - k) / (gamma + k);
  const double prefactor = gamma * std::exp(2.0 * (ln_gamma(0.5 + gamma) - ln_gamma(1.0 + gamma)));
  return -prefactor * product;
}

double gamma_epsilon(double w_target) {
  if (!(w_target > -1.0 && w_target <= 1.0)) {
    throw DomainError("gamma_epsilon: requires -1 < w_target <= 1");
  }
  return 0.5 * (1.0 - w_target) / (1.0 + w_target);
}

AsymptoticEstimate w_weak_dephasing(const DimensionlessParams& p) {
  check_params(p);
  // c + 2 ln 2 = -psi(1/2)
  const double amplitude =
      1.0 - 2.0 * (specfun::kEulerGamma + 2.0 * std::log(2.0) + specfun::digamma(0.5 + p.alpha)) *
                p.gamma;
  return {-amplitude * std::cos(kPi * (p.alpha - p.gamma)), Regime::weak_dephasing, p.gamma};
}

double weak_extremum_slope(int n) {
  if (n < 1) throw DomainError("weak_extremum_slope: requires n >= 1");
  double harmonic = 0.0;
  for (int k = 1; k <= n; ++k) harmonic += 1.0 / (2.0 * k - 1.0);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return -4.0 * sign * harmonic;
}

double w_weak_extremum(int n, double gamma) {
  if (n < 1) throw DomainError("w_weak_extremum: requires n >= 1");
  check_gamma(gamma);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign + weak_extremum_slope(n) * gamma;
}

AsymptoticEstimate w_strong_dephasing(const DimensionlessParams& p) {
  check_params(p);
  const double hint = p.gamma > 0.0 ? 1.0 / p.gamma : std::numeric_limits<double>::infinity();
  if (p.alpha == 0.0) return {-1.0, Regime::strong_dephasing, hint};
  return {-std::exp(-p.alpha * p.alpha / p.gamma), Regime::strong_dephasing, hint};
}

AsymptoticEstimate w_large_area(const DimensionlessParams& p) {
  check_params(p);
  const double hint =
      p.alpha > 0.0 ? 1.0 / (p.alpha * p.alpha) : std::numeric_limits<double>::infinity();
  const double envelope =
      std::exp(2.0 * ln_gamma(0.5 + p.gamma) - kLogPi) * std::pow(p.alpha, -2.0 * p.gamma);
  return {-envelope * std::cos(kPi * (p.alpha - p.gamma)), Regime::large_area, hint};
}

double area_epsilon(double epsilon, double gamma) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("area_epsilon: requires 0 < epsilon < 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("area_epsilon: requires gamma > 0 (no threshold without dephasing)");
  }
  const double log_base = std::log(kPi * epsilon) - 2.0 * ln_gamma(0.5 + gamma);
  return kPi * std::exp(-log_base / (2.0 * gamma));
}

double equal_superposition_area(int n, double gamma_t) {
  if (n < 0) throw DomainError("equal_superposition_area: requires n >= 0");
  if (!std::isfinite(gamma_t) || gamma_t < 0.0) {
    throw DomainError("equal_superposition_area: requires Gamma T >= 0");
  }
  return (2.0 * n + 1.0 + gamma_t) * kPi / 2.0;
}

double w_of_t(const DimensionlessParams& p, double t_over_t) {
  check_params(p);
  const TimeMap m = time_map(t_over_t);
  return -specfun::hyp2f1({p.alpha, -p.alpha, 0.5 + p.gamma}, m.z, m.zc);
}

double v_of_t(const DimensionlessParams& p, double t_over_t) {
  check_params(p);
  const TimeMap m = time_map(t_over_t);
  if (m.z == 0.0 || p.alpha == 0.0) return 0.0;
  if (m.zc == 0.0) {
    // Coherences survive only without dephasing: v(inf) = sin(pi alpha).
    return p.gamma > 0.0 ? 0.0 : specfun::sin_pi(p.alpha);
  }
  const double nu = 0.5 + p.gamma;
  const double f = specfun::hyp2f1({p.alpha + 1.0, 1.0 - p.alpha, nu + 1.0}, m.z, m.zc);
  return p.alpha / nu * std::sqrt(m.z) * std::sqrt(m.zc) * f;
}

BlochState state_of_t(const DimensionlessParams& p, double t_over_t) {
  return {0.0, v_of_t(p, t_over_t), w_of_t(p, t_over_t)};
}

}  // namespace sechbloch::analytic
