#pragma once

#include <string_view>

#include "sechbloch/bloch_state.hpp"

// Closed-form results for resonant excitation by the pulse
// Omega(t) = Omega0 sech(t/T) with constant dephasing rate Gamma.
namespace sechbloch::analytic {

/// alpha = Omega0 T (pulse area / pi) and gamma = Gamma T / 2.
struct DimensionlessParams {
  double alpha = 0.0;
  double gamma = 0.0;

  double area() const noexcept;
  double gamma_t() const noexcept { return 2.0 * gamma; }

  static DimensionlessParams from_gamma_t(double alpha, double gamma_t) {
    return {alpha, 0.5 * gamma_t};
  }
};

enum class Regime { weak_dephasing, strong_dephasing, large_area };

std::string_view to_string(Regime r) noexcept;

/// An asymptotic approximation of w(inf). `validity_hint` is the small
/// parameter of the expansion; the estimate is only meaningful when it is small.
struct AsymptoticEstimate {
  double value = 0.0;
  Regime regime = Regime::weak_dephasing;
  double validity_hint = 0.0;
};

/// Lossless result w(inf) = -cos(pi alpha).
double w_coherent(double alpha);

/// Exact final inversion
///   w(inf) = -G^2(1/2+gamma) / [G(1/2+gamma+alpha) G(1/2+gamma-alpha)].
/// Evaluated in the log domain so that large alpha does not overflow; the
/// poles of G(1/2+gamma-alpha) give an exact zero.
double w_infinity(const DimensionlessParams& p);

/// The same quantity rewritten with the reflection formula:
///   -G^2(1/2+gamma) G(1/2-gamma+alpha) / (pi G(1/2+gamma+alpha)) cos pi(alpha-gamma).
/// Throws DomainError within 1e-9 of a pole of G(1/2-gamma+alpha).
double w_infinity_cos_form(const DimensionlessParams& p);

/// w(inf) for an n pi pulse (alpha = n >= 1) as a finite product.
double w_integer_pulse(int n, double gamma);

/// w(inf) for alpha = n + 1/2, n >= 0.
double w_half_integer_pulse(int n, double gamma);

/// Dephasing gamma at which a pi pulse reaches inversion w_target, w_target in (-1, 1].
double gamma_epsilon(double w_target);

/// First-order expansion in gamma.
AsymptoticEstimate w_weak_dephasing(const DimensionlessParams& p);

/// Weak-dephasing value near the n-th extremum (alpha = n + gamma):
/// (-1)^(n+1) [1 - 4 gamma sum_{k=1}^{n} 1/(2k-1)].
double w_weak_extremum(int n, double gamma);

/// Coefficient of gamma in w_weak_extremum.
double weak_extremum_slope(int n);

/// Gaussian decay -exp(-alpha^2/gamma) for gamma >> alpha, 1.
AsymptoticEstimate w_strong_dephasing(const DimensionlessParams& p);

/// Power-law damped oscillation for alpha >> gamma, 1.
AsymptoticEstimate w_large_area(const DimensionlessParams& p);

/// Pulse area (radians) beyond which the oscillation amplitude stays below
/// epsilon. Requires 0 < epsilon < 1 and gamma > 0.
double area_epsilon(double epsilon, double gamma);

/// Pulse area (radians) of the n-th equal-superposition node,
/// (2n + 1 + Gamma T) pi / 2.
double equal_superposition_area(int n, double gamma_t);

/// Time-dependent inversion w(t) = -F(alpha, -alpha; 1/2+gamma; z),
/// z = (tanh(t/T) + 1) / 2.
double w_of_t(const DimensionlessParams& p, double t_over_t);

/// Time-dependent coherence v(t), normalised so that dw/dt = Omega(t) v(t).
double v_of_t(const DimensionlessParams& p, double t_over_t);

/// (0, v(t), w(t)); u vanishes identically on resonance.
BlochState state_of_t(const DimensionlessParams& p, double t_over_t);

}  // namespace sechbloch::analytic
