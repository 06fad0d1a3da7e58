#include "sechbloch/bloch_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "sechbloch/errors.hpp"

namespace sechbloch::ode {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using Vec = std::array<double, 3>;

Vec to_vec(const BlochState& s) { return {s.u, s.v, s.w}; }
BlochState to_state(const Vec& y) { return {y[0], y[1], y[2]}; }

Vec rhs(const Vec& y, const PulseCoefficients& c) {
  return to_vec(bloch_rhs(to_state(y), c));
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b*, the embedded fourth-order error estimate
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

class Stepper {
 public:
  Stepper(const PulseShape& shape, const IntegratorConfig& cfg, double t, const Vec& y)
      : shape_(shape), cfg_(cfg), t_(t), y_(y), k1_(rhs(y, shape(t))) {}

  // Advances exactly to `target`.
  void advance_to(double target) {
    while (t_ < target) {
      if (steps_ >= cfg_.max_steps) {
        std::ostringstream msg;
        msg << "integrator exceeded max_steps=" << cfg_.max_steps << " at t=" << t_;
        throw StepLimitExceeded(msg.str(), t_, to_state(y_));
      }
      const double remaining = target - t_;
      const bool clipped = h_ >= remaining;
      const double h = clipped ? remaining : h_;
      const double min_h = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t_), 1.0);
      if (h < min_h && !clipped) {
        std::ostringstream msg;
        msg << "step size underflow (h=" << h << ") at t=" << t_;
        throw StepSizeUnderflow(msg.str(), t_, to_state(y_));
      }
      ++steps_;
      Vec y_new;
      Vec k7;
      const double err = attempt(h, y_new, k7);
      if (err <= 1.0) {
        t_ = clipped ? target : t_ + h;
        y_ = y_new;
        k1_ = k7;
        const double factor =
            err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
        // A step shortened to hit a sample point does not shrink the next one.
        h_ = std::max(h_, h * factor);
        if (!clipped) h_ = h * factor;
      } else if (std::isfinite(err)) {
        h_ = h * std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, 1.0);
      } else {
        h_ = h * kMinFactor;
      }
    }
  }

  double t() const { return t_; }
  const Vec& y() const { return y_; }
  std::int64_t steps() const { return steps_; }
  void set_initial_step(double h) { h_ = h; }

 private:
  double attempt(double h, Vec& y_new, Vec& k7) const {
    const Vec& k1 = k1_;
    Vec tmp;
    auto stage = [&](double c, auto&& combine) {
      for (int i = 0; i < 3; ++i) tmp[i] = y_[i] + h * combine(i);
      return rhs(tmp, shape_(t_ + c * h));
    };
    const Vec k2 = stage(c2, [&](int i) { return a21 * k1[i]; });
    const Vec k3 = stage(c3, [&](int i) { return a31 * k1[i] + a32 * k2[i]; });
    const Vec k4 = stage(c4, [&](int i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    const Vec k5 = stage(c5, [&](int i) {
      return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
    });
    const Vec k6 = stage(1.0, [&](int i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    for (int i = 0; i < 3; ++i) {
      y_new[i] = y_[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    k7 = rhs(y_new, shape_(t_ + h));

    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
      sum += (e / scale) * (e / scale);
    }
    return std::sqrt(sum / 3.0);
  }

  const PulseShape& shape_;
  const IntegratorConfig& cfg_;
  double t_;
  Vec y_;
  Vec k1_;
  double h_ = 1e-3;
  std::int64_t steps_ = 0;
};

}  // namespace

SechPulseModel SechPulseModel::from_dimensionless(double alpha, double gamma, double T) {
  SechPulseModel m{alpha / T, T, 2.0 * gamma / T};
  m.validate();
  return m;
}

void SechPulseModel::validate() const {
  if (!std::isfinite(omega0) || omega0 < 0.0) throw DomainError("sech pulse: requires omega0 >= 0");
  if (!std::isfinite(T) || T <= 0.0) throw DomainError("sech pulse: requires T > 0");
  if (!std::isfinite(Gamma) || Gamma < 0.0) throw DomainError("sech pulse: requires Gamma >= 0");
}

double SechPulseModel::area() const noexcept { return kPi * omega0 * T; }

double SechPulseModel::rabi(double t) const noexcept { return omega0 / std::cosh(t / T); }

PulseCoefficients SechPulseModel::operator()(double t) const noexcept {
  return {rabi(t), 0.0, Gamma};
}

PulseShape SechPulseModel::shape() const {
  return [model = *this](double t) { return model(t); };
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator: tolerances must be > 0");
  if (!(window_halfwidth > 0.0) || !std::isfinite(window_halfwidth)) {
    throw DomainError("integrator: window half-width must be > 0");
  }
  if (max_steps < 1) throw DomainError("integrator: max_steps must be >= 1");
  if (sample_count < 2) throw DomainError("integrator: sample_count must be >= 2");
}

Trajectory::Trajectory(std::vector<TrajectorySample> samples, std::int64_t steps_taken)
    : samples_(std::move(samples)), steps_taken_(steps_taken) {}

BlochState bloch_rhs(const BlochState& s, const PulseCoefficients& c) noexcept {
  return {-c.dephasing * s.u - c.detuning * s.v,
          c.detuning * s.u - c.dephasing * s.v - c.rabi * s.w,
          c.rabi * s.v};
}

BlochState bloch_rhs(const BlochState& s, double t, const PulseShape& shape) {
  return bloch_rhs(s, shape(t));
}

Trajectory integrate_span(const PulseShape& shape, const BlochState& initial, double t0, double t1,
                          const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw DomainError("integrator: requires finite t0 < t1");
  }
  Stepper stepper(shape, cfg, t0, to_vec(initial));
  stepper.set_initial_step(std::min(1e-3, (t1 - t0) / 10.0));

  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(cfg.sample_count));
  samples.push_back({t0, initial});
  const int intervals = cfg.sample_count - 1;
  for (int i = 1; i <= intervals; ++i) {
    const double target = (i == intervals) ? t1 : t0 + (t1 - t0) * i / intervals;
    stepper.advance_to(target);
    samples.push_back({target, to_state(stepper.y())});
  }
  return Trajectory(std::move(samples), stepper.steps());
}

Trajectory integrate(const PulseShape& shape, const IntegratorConfig& cfg, double time_scale) {
  cfg.validate();
  if (!(time_scale > 0.0)) throw DomainError("integrator: time scale must be > 0");
  const double half = cfg.window_halfwidth * time_scale;
  return integrate_span(shape, kGroundState, -half, half, cfg);
}

Trajectory integrate(const SechPulseModel& model, const IntegratorConfig& cfg) {
  model.validate();
  return integrate(model.shape(), cfg, model.T);
}

double final_inversion(const PulseShape& shape, const IntegratorConfig& cfg, double time_scale) {
  IntegratorConfig endpoints = cfg;
  endpoints.sample_count = 2;
  return integrate(shape, endpoints, time_scale).back().state.w;
}

double final_inversion(const SechPulseModel& model, const IntegratorConfig& cfg) {
  model.validate();
  return final_inversion(model.shape(), cfg, model.T);
}

}  // namespace sechbloch::ode
