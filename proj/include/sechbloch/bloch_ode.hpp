#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sechbloch/bloch_state.hpp"

// Direct numerical integration of the Bloch equation with dephasing,
//
//   d/dt (u, v, w) = (-Gamma u - Delta v,  Delta u - Gamma v - Omega w,  Omega v),
//
// used as an independent check on the closed-form results.
namespace sechbloch::ode {

/// Instantaneous coefficients of the Bloch equation.
struct PulseCoefficients {
  double rabi = 0.0;       // Omega(t)
  double detuning = 0.0;   // Delta(t)
  double dephasing = 0.0;  // Gamma(t)
};

/// Any time-dependent excitation: t -> (Omega, Delta, Gamma).
using PulseShape = std::function<PulseCoefficients(double)>;

/// Resonant sech pulse Omega(t) = omega0 sech(t/T) with constant dephasing.
struct SechPulseModel {
  double omega0 = 0.0;
  double T = 1.0;
  double Gamma = 0.0;

  /// Builds the model with alpha = omega0 T and gamma = Gamma T / 2.
  static SechPulseModel from_dimensionless(double alpha, double gamma, double T = 1.0);

  void validate() const;
  double area() const noexcept;
  double rabi(double t) const noexcept;
  PulseCoefficients operator()(double t) const noexcept;
  PulseShape shape() const;
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double window_halfwidth = 25.0;  // L, in units of the pulse width
  std::int64_t max_steps = 10'000'000;
  int sample_count = 2;

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  BlochState state;
};

/// Time-ordered samples of the Bloch vector; immutable once built.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TrajectorySample> samples, std::int64_t steps_taken = 0);

  std::span<const TrajectorySample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }
  const TrajectorySample& operator[](std::size_t i) const { return samples_[i]; }
  std::int64_t steps_taken() const noexcept { return steps_taken_; }

 private:
  std::vector<TrajectorySample> samples_;
  std::int64_t steps_taken_;
};

/// Right-hand side of the Bloch equation.
BlochState bloch_rhs(const BlochState& s, const PulseCoefficients& c) noexcept;
BlochState bloch_rhs(const BlochState& s, double t, const PulseShape& shape);

/// Integrates from `initial` at t0 to t1 with an adaptive Dormand-Prince 5(4)
/// pair. Samples are evenly spaced, include both endpoints and land exactly on
/// step boundaries. Throws StepLimitExceeded or StepSizeUnderflow.
Trajectory integrate_span(const PulseShape& shape, const BlochState& initial, double t0,
                          double t1, const IntegratorConfig& cfg);

/// Integrates from the ground state over [-L T, +L T].
Trajectory integrate(const PulseShape& shape, const IntegratorConfig& cfg, double time_scale = 1.0);
Trajectory integrate(const SechPulseModel& model, const IntegratorConfig& cfg);

/// w at t = +L T. The neglected sech tail shifts the area by at most
/// 2 alpha e^{-L}, so |dw| <~ 2 pi alpha e^{-L}.
double final_inversion(const PulseShape& shape, const IntegratorConfig& cfg, double time_scale = 1.0);
double final_inversion(const SechPulseModel& model, const IntegratorConfig& cfg);

}  // namespace sechbloch::ode
