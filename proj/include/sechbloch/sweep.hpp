#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sechbloch/analytic.hpp"
#include "sechbloch/bloch_ode.hpp"

// Parameter sweeps of w(inf), node and extremum location, and the datasets
// behind the two reference figures.
namespace sechbloch::sweep {

enum class Variable { gamma_dimensionless, gamma_t, alpha, area_over_pi };
enum class Engine { analytic, ode, both };

std::string_view to_string(Variable v) noexcept;
std::string_view to_string(Engine e) noexcept;

struct SweepSpec {
  Variable variable = Variable::alpha;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  /// The parameter that is not swept; its swept component is ignored.
  analytic::DimensionlessParams fixed{};
  Engine engine = Engine::analytic;
  ode::IntegratorConfig integrator{};
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
  analytic::DimensionlessParams params_at(double x) const;
  double grid_point(int i) const;
};

struct SweepRow {
  double x = 0.0;
  std::optional<double> w_analytic;
  std::optional<double> w_ode;
  std::optional<double> abs_diff;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSpec spec;
  std::string fingerprint;
};

/// Evaluates every grid point. Rows come back in grid order regardless of how
/// the work was scheduled; a failing point leaves empty values and an error note.
SweepResult run_sweep(const SweepSpec& spec);

struct RootResult {
  double alpha_root = 0.0;
  double residual = 0.0;
  std::pair<double, double> bracket;
};

/// Zero of w(inf)(alpha) in (n + gamma, n + 1 + gamma). Throws BracketError
/// when the endpoints do not straddle a sign change.
RootResult find_node(int n, double gamma);

/// Stationary point of w(inf)(alpha) in (n - 1/2 + gamma, n + 1/2 + gamma),
/// located on the sign change of a central difference with step 1e-6. The
/// residual is that difference quotient at the root.
RootResult find_extremum(int n, double gamma);

/// Least-squares slope of log|w| against log alpha over the extrema
/// n_range.first .. n_range.second. Expected to approach -2 gamma.
double amplitude_envelope_fit(double gamma, std::pair<int, int> n_range);

/// A dense numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Pulse areas / pi of the curves in the dephasing-axis figure.
inline constexpr double kFig1Alphas[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
/// Gamma T values of the curves in the area-axis figure.
inline constexpr double kFig2GammaT[] = {0.01, 0.1, 0.2, 0.5, 1.0, 2.0};

/// w(inf) against Gamma T in [0, 6] for each alpha in kFig1Alphas.
Table figure_dephasing_axis(int points = 301);
/// w(inf) against area / pi in [0, 8] for each Gamma T in kFig2GammaT.
Table figure_area_axis(int points = 601);

/// Column label fragment for a parameter value: 0.5 -> "0p5", 2 -> "2".
std::string value_label(double v);

}  // namespace sechbloch::sweep
