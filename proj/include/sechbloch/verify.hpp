#pragma once

#include <string>
#include <vector>

// Self-check suite behind `sechbloch verify`: closed form against the
// integrator, special cases, node law and the asymptotic regimes.
namespace sechbloch::verify {

enum class Level { fast, full };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_passed() const noexcept;
};

/// `fast` covers the integrator oracle grid, pi-pulse point values, special-case
/// identities, node and slope checks. `full` adds the envelope fit, the
/// weak-dephasing order check and the time-dependent solution.
Report run(Level level);

}  // namespace sechbloch::verify
