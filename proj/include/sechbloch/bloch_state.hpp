#pragma once

namespace sechbloch {

/// Bloch vector of a two-state system: u = 2 Re rho12, v = 2 Im rho12,
/// w = rho22 - rho11 (population inversion).
struct BlochState {
  double u = 0.0;
  double v = 0.0;
  double w = -1.0;

  double norm_squared() const noexcept { return u * u + v * v + w * w; }

  friend bool operator==(const BlochState&, const BlochState&) = default;
};

/// The ground state the pulse acts on.
inline constexpr BlochState kGroundState{0.0, 0.0, -1.0};

}  // namespace sechbloch
