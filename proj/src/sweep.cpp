#include "sechbloch/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>

#include "sechbloch/errors.hpp"

namespace sechbloch::sweep {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kExtremumStep = 1e-6;
constexpr std::uintmax_t kMaxRootIterations = 200;

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class F>
RootResult bracketed_root(F&& f, double lo, double hi, const char* what) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, {lo, hi}};
  if (f_hi == 0.0) return {hi, 0.0, {lo, hi}};
  if (!(f_lo * f_hi < 0.0)) {
    throw BracketError(std::string(what) + ": no sign change on [" + shortest(lo) + ", " +
                       shortest(hi) + "]");
  }
  std::uintmax_t iterations = kMaxRootIterations;
  const auto tol = [](double a, double b) { return std::abs(b - a) <= kRootTolerance; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iterations);
  const double root = 0.5 * (a + b);
  return {root, f(root), {lo, hi}};
}

SweepRow evaluate_row(const SweepSpec& spec, double x) {
  SweepRow row;
  row.x = x;
  const analytic::DimensionlessParams p = spec.params_at(x);
  try {
    if (spec.engine != Engine::ode) row.w_analytic = analytic::w_infinity(p);
    if (spec.engine != Engine::analytic) {
      row.w_ode = ode::final_inversion(ode::SechPulseModel::from_dimensionless(p.alpha, p.gamma),
                                       spec.integrator);
    }
    if (spec.engine == Engine::both) row.abs_diff = std::abs(*row.w_analytic - *row.w_ode);
  } catch (const std::exception& e) {
    row.w_analytic.reset();
    row.w_ode.reset();
    row.abs_diff.reset();
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::string_view to_string(Variable v) noexcept {
  switch (v) {
    case Variable::gamma_dimensionless:
      return "gamma";
    case Variable::gamma_t:
      return "gamma_t";
    case Variable::alpha:
      return "alpha";
    case Variable::area_over_pi:
      return "area_over_pi";
  }
  return "unknown";
}

std::string_view to_string(Engine e) noexcept {
  switch (e) {
    case Engine::analytic:
      return "analytic";
    case Engine::ode:
      return "ode";
    case Engine::both:
      return "both";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw DomainError("sweep: requires finite start < stop");
  }
  if (points < 2) throw DomainError("sweep: requires at least 2 points");
  if (start < 0.0) throw DomainError("sweep: swept parameter must be >= 0");
  if (engine != Engine::analytic) integrator.validate();
}

analytic::DimensionlessParams SweepSpec::params_at(double x) const {
  switch (variable) {
    case Variable::gamma_dimensionless:
      return {fixed.alpha, x};
    case Variable::gamma_t:
      return {fixed.alpha, 0.5 * x};
    case Variable::alpha:
    case Variable::area_over_pi:
      return {x, fixed.gamma};
  }
  return fixed;
}

double SweepSpec::grid_point(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  result.rows.resize(static_cast<std::size_t>(spec.points));

  result.fingerprint = "variable=" + std::string(to_string(spec.variable)) +
                       ";engine=" + std::string(to_string(spec.engine)) +
                       ";fixed_alpha=" + shortest(spec.fixed.alpha) +
                       ";fixed_gamma=" + shortest(spec.fixed.gamma);
  if (spec.engine != Engine::analytic) {
    result.fingerprint += ";rel_tol=" + shortest(spec.integrator.rel_tol) +
                          ";abs_tol=" + shortest(spec.integrator.abs_tol) +
                          ";window_L=" + shortest(spec.integrator.window_halfwidth) +
                          ";max_steps=" + std::to_string(spec.integrator.max_steps);
  }

  unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  // The analytic engine is too cheap to be worth a thread per point.
  if (spec.engine == Engine::analytic) workers = 1;
  workers = std::clamp(workers, 1u, static_cast<unsigned>(spec.points));

  auto work = [&](unsigned first) {
    for (int i = static_cast<int>(first); i < spec.points; i += static_cast<int>(workers)) {
      result.rows[static_cast<std::size_t>(i)] = evaluate_row(spec, spec.grid_point(i));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return result;
}

RootResult find_node(int n, double gamma) {
  if (n < 0) throw DomainError("find_node: requires n >= 0");
  if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("find_node: requires gamma >= 0");
  const auto w = [gamma](double a) { return analytic::w_infinity({a, gamma}); };
  return bracketed_root(w, n + gamma, n + 1.0 + gamma, "find_node");
}

RootResult find_extremum(int n, double gamma) {
  if (n < 1) throw DomainError("find_extremum: requires n >= 1");
  if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("find_extremum: requires gamma >= 0");
  const auto slope = [gamma](double a) {
    return (analytic::w_infinity({a + kExtremumStep, gamma}) -
            analytic::w_infinity({a - kExtremumStep, gamma})) /
           (2.0 * kExtremumStep);
  };
  return bracketed_root(slope, n - 0.5 + gamma, n + 0.5 + gamma, "find_extremum");
}

double amplitude_envelope_fit(double gamma, std::pair<int, int> n_range) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("amplitude_envelope_fit: requires gamma > 0");
  }
  const auto [lo, hi] = n_range;
  if (lo < 10.0 * std::max(gamma, 1.0)) {
    throw DomainError("amplitude_envelope_fit: range must start at n >= 10 max(gamma, 1)");
  }
  if (hi - lo + 1 < 4) throw DomainError("amplitude_envelope_fit: fewer than 4 extrema in range");

  std::vector<double> xs;
  std::vector<double> ys;
  for (int n = lo; n <= hi; ++n) {
    const RootResult r = find_extremum(n, gamma);
    xs.push_back(std::log(r.alpha_root));
    ys.push_back(std::log(std::abs(analytic::w_infinity({r.alpha_root, gamma}))));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::string value_label(double v) {
  std::string s = shortest(v);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

namespace {

Table figure_table(Variable variable, double stop, int points, std::string x_name,
                   std::span<const double> curves, std::string prefix, bool curve_is_alpha) {
  if (points < 2) throw DomainError("figure: requires at least 2 points");
  Table table;
  table.columns.push_back(std::move(x_name));
  std::vector<SweepResult> sweeps;
  for (double c : curves) {
    table.columns.push_back(prefix + value_label(c));
    SweepSpec spec;
    spec.variable = variable;
    spec.start = 0.0;
    spec.stop = stop;
    spec.points = points;
    spec.fixed = curve_is_alpha ? analytic::DimensionlessParams{c, 0.0}
                                : analytic::DimensionlessParams{0.0, 0.5 * c};
    spec.engine = Engine::analytic;
    sweeps.push_back(run_sweep(spec));
  }
  table.rows.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    auto& row = table.rows[static_cast<std::size_t>(i)];
    row.push_back(sweeps.front().rows[static_cast<std::size_t>(i)].x);
    for (const SweepResult& s : sweeps) {
      row.push_back(
          s.rows[static_cast<std::size_t>(i)].w_analytic.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
  }
  return table;
}

}  // namespace

Table figure_dephasing_axis(int points) {
  return figure_table(Variable::gamma_t, 6.0, points, "gamma_t", kFig1Alphas, "w_alpha_", true);
}

Table figure_area_axis(int points) {
  return figure_table(Variable::area_over_pi, 8.0, points, "area_over_pi", kFig2GammaT,
                      "w_gamma_t_", false);
}

}  // namespace sechbloch::sweep
